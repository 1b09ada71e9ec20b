import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from classj import (
    BetaIsZero,
    LatticeExhausted,
    SeriesNotConverged,
    TruncationPolicy,
    X_eval,
    Y_eval,
    ZeroNormalization,
    even_series_eval,
    make_function,
    normalization_at_origin,
    paired_product_eval,
    recentered_product_eval,
    reference_cos,
    reference_cosh,
)
from classj.euler import cos_table, cosh_table



def policy(n, tail="integral"):
    return TruncationPolicy(n, tail)

COS1 = float(mpmath.cos(1))
COSH1 = float(mpmath.cosh(1))
COSH2 = float(mpmath.cosh(2))


def test_frozen_constants():
    assert COS1 == pytest.approx(0.5403023059, abs=1e-10)
    assert COSH1 == pytest.approx(1.5430806348, abs=1e-10)
    assert COSH2 == pytest.approx(3.7621956911, abs=1e-10)


class TestSeries:
    def test_cos_at_origin(self):
        r = even_series_eval(cos_table(20), 0.0)
        assert r.value == 1 and r.tail_bound == 0

    def test_cos_at_one(self):
        r = even_series_eval(cos_table(30), 1.0, 20)
        assert r.value.real == pytest.approx(COS1, abs=1e-15)
        assert r.tail_bound <= 1 / math.factorial(42)
        assert abs(r.value - COS1) <= r.tail_bound + 1e-16

    def test_cosh_at_one(self):
        r = even_series_eval(cosh_table(20), 1.0, 20)
        assert r.value.real == pytest.approx(COSH1, abs=1e-15)

    def test_divergent_ratio(self):
        table = cosh_table(4)
        with pytest.raises(SeriesNotConverged):
            even_series_eval(table, 100.0)

    def test_order_out_of_range(self):
        with pytest.raises(ValueError):
            even_series_eval(cos_table(3), 1.0, 4)


class TestPaired:
    def test_origin(self, euler):
        r = paired_product_eval(euler, 0, policy(100))
        assert r.value == 1 and r.tail_bound == 0 and r.n_used == 100

    @pytest.mark.parametrize("n", [1, 7, 1000])
    def test_exact_zero_factor(self, euler, n):
        r = paired_product_eval(euler, 1j * math.pi / 2, policy(n))
        assert r.value == 0 and r.tail_bound == 0

    def test_cosh_one(self, euler):
        r = paired_product_eval(euler, 1, policy(10_000))
        assert abs(r.value - COSH1) <= r.tail_bound

    def test_complex_point(self, euler):
        s = 0.7 + 1.3j
        r = paired_product_eval(euler, s, policy(10_000))
        assert abs(r.value - complex(mpmath.cosh(s))) <= r.tail_bound

    def test_exhausted(self):
        f = make_function(0.0, [1.0, 2.0])
        with pytest.raises(LatticeExhausted):
            paired_product_eval(f, 0.5, policy(3))

    def test_tail_model_extends_beyond_prefix(self, euler):
        short = make_function(0.0, euler.zeros.tau[:50], 1.0, (math.pi, -math.pi / 2))
        a = paired_product_eval(short, 0.9, policy(400))
        b = paired_product_eval(euler, 0.9, policy(400))
        assert a.value == pytest.approx(b.value, rel=1e-14)
        assert abs(a.value - reference_cosh(0.9)) <= a.tail_bound

    def test_none_mode_counts_stored_only(self):
        f = make_function(0.0, [1.0, 2.0, 3.0], 1.0, (1.0, 0.5))
        none = paired_product_eval(f, 0.5, policy(3, "none"))
        integral = paired_product_eval(f, 0.5, policy(3, "integral"))
        assert none.tail_bound < 1e-14
        assert integral.tail_bound > 0.01

    def test_finite_lattice_is_exact_polynomial(self):
        f = make_function(0.5, [1.0, 2.0], 2.0)
        s = 1.5 + 0.25j
        u = s - 0.5
        expected = 2.0 * (1 + u * u) * (1 + u * u / 4)
        r = paired_product_eval(f, s, policy(2))
        assert r.value == pytest.approx(expected, rel=1e-15)
        assert r.tail_bound < 1e-14


class TestRestrictions:
    @pytest.mark.parametrize("n", [1, 2, 50, 1000])
    def test_y_zero_at_first_tau(self, euler, n):
        assert Y_eval(euler, math.pi / 2, policy(n)).value == 0

    def test_y_and_x_at_origin(self, euler):
        assert Y_eval(euler, 0, policy(100)).value == 1
        assert X_eval(euler, 0, policy(100)).value == 1

    def test_y_cos_one(self, euler):
        r = Y_eval(euler, 1.0, policy(1000))
        assert abs(r.value - COS1) <= r.tail_bound

    def test_x_cosh_one(self, euler):
        r = X_eval(euler, 1.0, policy(10_000))
        assert abs(r.value - COSH1) <= r.tail_bound

    @given(st.floats(-50, 50), st.integers(1, 3000))
    @settings(max_examples=50, deadline=None)
    def test_evenness_bitwise(self, euler, t, n):
        p = policy(n)
        assert Y_eval(euler, t, p) == Y_eval(euler, -t, p)
        assert X_eval(euler, t, p) == X_eval(euler, -t, p)

    def test_exact_truncation_zeros(self, euler):
        p = policy(200)
        for tau in euler.zeros.tau[:200]:
            assert Y_eval(euler, tau, p).value == 0

    def test_real_arguments_only(self, euler):
        with pytest.raises(TypeError):
            Y_eval(euler, 1j, policy(10))
        with pytest.raises(ValueError):
            X_eval(euler, math.inf, policy(10))


@pytest.mark.parametrize("t", [0.5, 1.0, 3.0])
def test_tail_bound_decays_like_inverse_n(euler, t):
    bounds = [Y_eval(euler, t, policy(n)).tail_bound for n in (100, 1000, 10_000)]
    assert bounds[0] >= bounds[1] >= bounds[2]
    for hi, lo in zip(bounds, bounds[1:]):
        assert 8 <= hi / lo <= 12


def test_tail_bound_nonincreasing_in_n(euler):
    bounds = [X_eval(euler, 2.0, policy(n)).tail_bound for n in range(1, 400, 13)]
    assert all(b <= a for a, b in zip(bounds, bounds[1:]))


class TestRecentered:
    @pytest.mark.parametrize("s", [0.3 + 0.7j, 2.0, 1 + 1j, 4j, -3.5 + 0.2j])
    @pytest.mark.parametrize("n", [10, 1000])
    def test_reduces_to_paired(self, euler, s, n):
        a = recentered_product_eval(euler, s, 0.0, 1.0, policy(n))
        b = paired_product_eval(euler, s, policy(n))
        ulp = math.ulp(abs(b.value))
        assert abs(a.value.real - b.value.real) <= 2 * n * ulp
        assert abs(a.value.imag - b.value.imag) <= 2 * n * ulp
        # equal truncation parts; only the rounding allowance differs
        assert a.tail_bound == pytest.approx(b.tail_bound, rel=1e-8)

    def test_zero_case(self, euler):
        assert recentered_product_eval(euler, 1j * math.pi / 2, 0, 1, policy(100)).value == 0

    def test_cosh_two_from_beta_one(self, euler):
        r = recentered_product_eval(euler, 2, 1, reference_cosh(1), policy(10_000))
        assert abs(r.value - COSH2) <= r.tail_bound

    def test_complex_beta(self, euler):
        beta = 0.4 + 0.9j
        lb = complex(mpmath.cosh(beta))
        s = -1.1 + 0.3j
        r = recentered_product_eval(euler, s, beta, lb, policy(5000))
        assert abs(r.value - complex(mpmath.cosh(s))) <= r.tail_bound

    def test_beta_far_from_line(self, euler):
        beta = 6.0 + 0.5j
        lb = complex(mpmath.cosh(beta))
        r = recentered_product_eval(euler, 0.2, beta, lb, policy(2000))
        assert abs(r.value - reference_cosh(0.2)) <= r.tail_bound

    @pytest.mark.parametrize("beta", [1j * math.pi / 2, -1.5j * math.pi, 1j * (2_000_000 - 0.5) * math.pi])
    def test_beta_collision(self, euler, beta):
        with pytest.raises(BetaIsZero):
            recentered_product_eval(euler, 1.0, beta, 1.0, policy(10))

    def test_zero_normalization(self, euler):
        with pytest.raises(ZeroNormalization):
            recentered_product_eval(euler, 1.0, 0.5, 0.0, policy(10))


class TestNormalization:
    def test_center_at_origin(self, euler):
        r = normalization_at_origin(euler, policy(500))
        assert r.value == 1 and r.tail_bound == 0

    def test_shifted_lattice_gives_cosh_one(self, shifted):
        r = normalization_at_origin(shifted, policy(20_000))
        assert abs(r.value - COSH1) <= r.tail_bound
        assert r.tail_bound < 1e-5

    def test_single_pair(self):
        f = make_function(2.0, [1.0], 1.0)
        assert normalization_at_origin(f, policy(1)).value == 5


def test_series_product_consistency(euler):
    table = cos_table(30)
    for t in np.linspace(-3, 3, 13):
        s = even_series_eval(table, t, 30)
        p = Y_eval(euler, t, policy(2000))
        assert abs(s.value - p.value) <= s.tail_bound + p.tail_bound + 1e-15


def test_tail_bound_rigorous_against_mpmath(euler):
    for t in (0.1, 0.9, 2.5, 7.0):
        for n in (1, 3, 30, 300):
            r = Y_eval(euler, t, policy(n))
            assert abs(r.value - float(mpmath.cos(t))) <= r.tail_bound
            r = X_eval(euler, t, policy(n))
            assert abs(r.value - float(mpmath.cosh(t))) <= r.tail_bound
