import math
import sys

import pytest

from classj import make_euler, make_function


@pytest.fixture(scope="session")
def euler():
    return make_euler().f


@pytest.fixture(scope="session")
def shifted():
    """cosh(s - 1): the cosine lattice moved to ell = 1."""
    tau = make_euler().f.zeros.tau[:20_000]
    return make_function(1.0, tau, 1.0, (math.pi, -math.pi / 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in results:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
