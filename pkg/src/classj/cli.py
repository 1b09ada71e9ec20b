"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or config error,
3 evaluator error (its class name goes to stderr).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Iterable, Sequence

from . import analysis, evaluators
from .core import (
    ClassJError,
    ClassJFunction,
    InsufficientRadii,
    InvalidLattice,
    TailModel,
    TruncationPolicy,
    ZeroLattice,
    ZeroNormalization,
    validate_lattice,
)
from .euler import make_euler, reference_cos, reference_cosh, reference_cosh_complex

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class ConfigError(Exception):
    pass


# -- config -----------------------------------------------------------------

def lattice_to_json(f: ClassJFunction) -> dict:
    z = f.zeros
    doc = {"ell": z.ell, "tau": [float(t) for t in z.tau]}
    if z.tail is not None:
        doc["tail"] = {"a": z.tail.a, "b": z.tail.b}
    doc["value_at_center"] = [f.value_at_center.real, f.value_at_center.imag]
    return doc


def lattice_from_json(doc: dict) -> tuple[ZeroLattice, complex]:
    """Parse a FunctionConfig document without validating the lattice."""
    try:
        tail = doc.get("tail")
        model = TailModel(float(tail["a"]), float(tail["b"])) if tail is not None else None
        re, im = doc["value_at_center"]
        z = ZeroLattice(float(doc["ell"]), [float(t) for t in doc["tau"]], model)
        return z, complex(float(re), float(im))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed function config: {exc!r}") from exc


def load_function(path: str) -> ClassJFunction:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected a JSON object")
    z, value = lattice_from_json(doc)
    report = validate_lattice(z)
    if not report:
        raise ConfigError(f"{path}: {report}")
    try:
        return ClassJFunction(z, value)
    except (InvalidLattice, ZeroNormalization, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _function(args) -> ClassJFunction:
    if args.euler:
        return make_euler().f
    return load_function(args.file)


# -- formatting ----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _emit(args, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    rows = list(rows)
    if args.json:
        text = json.dumps([{h: _jsonable(v) for h, v in zip(header, r)} for r in rows], indent=1) + "\n"
    else:
        lines = [",".join(header)] + [",".join(_fmt(v) for v in r) for r in rows]
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _float_list(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(float(p)) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _policy(args, n_pairs=None) -> TruncationPolicy:
    return TruncationPolicy(args.n_pairs if n_pairs is None else n_pairs, args.tail)


# -- evaluation dispatch --------------------------------------------------------

def _evaluate(f: ClassJFunction, mode: str, point: complex, policy: TruncationPolicy, k: int):
    if mode == "Y":
        return evaluators.Y_eval(f, _real(point), policy)
    if mode == "X":
        return evaluators.X_eval(f, _real(point), policy)
    if mode == "PRODUCT":
        return evaluators.paired_product_eval(f, point, policy)
    table = analysis.coefficients_from_zeros(f, k, policy)
    return evaluators.even_series_eval(table, point - f.ell)


def _real(point: complex) -> float:
    if point.imag != 0:
        raise ConfigError(f"mode needs a real point, got {point!r}")
    return point.real


def _oracle(mode: str, point: complex) -> complex:
    if mode == "Y":
        return complex(reference_cos(point.real))
    if point.imag == 0:
        return complex(reference_cosh(point.real))
    return reference_cosh_complex(point)


def _parse_points(text: str) -> list[tuple[str, complex]]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append((tok, complex(tok.replace("i", "j"))))
        except ValueError as exc:
            raise ConfigError(f"bad point {tok!r}") from exc
    if not out:
        raise ConfigError("no points given")
    return out


def cmd_eval(args) -> int:
    f = _function(args)
    policy = _policy(args)
    rows = []
    for tok, p in _parse_points(args.points):
        r = _evaluate(f, args.mode, p, policy, args.k)
        rows.append((tok, r.value.real, r.value.imag, r.tail_bound, r.n_used))
    _emit(args, ("point", "value_re", "value_im", "tail_bound", "n_used"), rows)
    return EXIT_OK


def cmd_convergence(args) -> int:
    ladder = args.ladder
    if not ladder or any(n < 1 for n in ladder) or any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ConfigError(f"ladder must be strictly increasing positive integers, got {ladder}")
    f = _function(args)
    (_, p), = _parse_points(args.point)
    truth = _oracle(args.mode, p) if args.euler else None
    rows = []
    for n in ladder:
        r = _evaluate(f, args.mode, p, _policy(args, n), args.k)
        row = [n, r.value.real, r.value.imag]
        if truth is not None:
            row.append(abs(r.value - truth))
        row.append(r.tail_bound)
        rows.append(row)
    header = ["n_pairs", "value_re", "value_im"] + (["abs_error"] if truth is not None else []) + ["tail_bound"]
    _emit(args, header, rows)
    return EXIT_OK


def _load_table(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if isinstance(doc, dict) and "log_max_modulus" in doc:
        try:
            table = {float(r): float(v) for r, v in zip(doc["radii"], doc["log_max_modulus"], strict=True)}
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{path}: malformed max-modulus table: {exc!r}") from exc
        return table
    return None


def cmd_order(args) -> int:
    table = _load_table(args.file) if args.file else None
    try:
        if table is not None:
            radii = args.radii or sorted(table)
            missing = [r for r in radii if r not in table]
            if missing:
                raise ConfigError(f"radii {missing} are not in the table")
            est = analysis.estimate_order(table.__getitem__, radii, log_scale=True)
        else:
            f = _function(args)
            radii = args.radii or [10, 20, 40, 80, 160, 300]
            log_m = analysis.circle_log_max_modulus(f, _policy(args), args.samples)
            est = analysis.estimate_order(log_m, radii, log_scale=True)
    except InsufficientRadii as exc:
        print(f"InsufficientRadii: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(args, ("slope", "intercept", "max_residual"), [(est.slope, est.intercept, est.max_residual)])
    return EXIT_OK


def cmd_coeffs(args) -> int:
    if args.k < 1:
        raise ConfigError(f"K must be >= 1, got {args.k}")
    f = _function(args)
    x = analysis.coefficients_from_zeros(f, args.k, _policy(args))
    y = x.alternated()
    rows = []
    for k in range(1, x.K + 1):
        rows.append((k, _real_or_complex(x.c[k]), _real_or_complex(y.c[k])))
    _emit(args, ("k", "x_form_c_k", "y_form_c_k"), rows)
    return EXIT_OK


def _real_or_complex(v):
    v = complex(v)
    return v.real if v.imag == 0 else v


# -- verify ---------------------------------------------------------------------

VERIFY_GRID = (0.25, 0.5, 1.0, 2.0, 5.0)


def run_checks(f: ClassJFunction, policy: TruncationPolicy, euler: bool) -> list[tuple[str, str, float, float]]:
    """Run the symmetry, summability and (for the built-in lattice) oracle checks.

    Rows are (check, status, metric, threshold); status is PASS, FAIL or NOTE.
    """
    rows = []

    def add(name, ok, metric, threshold):
        rows.append((name, "PASS" if ok else "FAIL", float(metric), float(threshold)))

    n = policy.n_pairs
    for i, d in enumerate((1 + 2j, 0.3 + 0.7j, -0.5 + 1.5j, 2.0)):
        s = f.ell + d
        lhs, rhs, gap = analysis.check_reflection(f, s, policy)
        add(f"reflection_{i}", gap == 0, gap, 0)

    for t in VERIFY_GRID:
        y_pos = evaluators.Y_eval(f, t, policy).value
        y_neg = evaluators.Y_eval(f, -t, policy).value
        x_pos = evaluators.X_eval(f, t, policy).value
        x_neg = evaluators.X_eval(f, -t, policy).value
        add(f"even_Y_{t!r}", y_pos == y_neg, analysis.ulp_gap(y_pos, y_neg), 0)
        add(f"even_X_{t!r}", x_pos == x_neg, analysis.ulp_gap(x_pos, x_neg), 0)

    for t in (0.0, 0.5, 1.0, math.pi / 2, 3.0):
        _, _, gap = analysis.check_duality(f, t, policy)
        add(f"duality_{t!r}", gap <= 4 * n, gap, 4 * n)

    tau = f.zeros.taus(min(n, 5))
    worst = max(abs(evaluators.Y_eval(f, t, policy).value) for t in tau)
    add("truncation_zeros", worst == 0, worst, 0)

    if n >= 10:
        rep = analysis.summability_report(f.zeros, n, policy)
        sq = [v for _, v in rep.partial_inverse_square_sum]
        inv = [v for _, v in rep.partial_inverse_sum]
        monotone = all(b >= a for a, b in zip(sq, sq[1:])) and all(b >= a for a, b in zip(inv, inv[1:]))
        add("summability_square", monotone and rep.verdict_square.value == "APPARENTLY_CONVERGENT",
            rep.square_limit, math.inf)
        rows.append((f"inverse_sum_{rep.verdict_inverse.value}", "NOTE", inv[-1], math.nan))

    if euler:
        for t in VERIFY_GRID:
            r = evaluators.Y_eval(f, t, policy)
            err = abs(r.value - reference_cos(t))
            add(f"oracle_cos_{t!r}", err <= r.tail_bound, err, r.tail_bound)
            r = evaluators.X_eval(f, t, policy)
            err = abs(r.value - reference_cosh(t))
            add(f"oracle_cosh_{t!r}", err <= r.tail_bound, err, r.tail_bound)
    return rows


def cmd_verify(args) -> int:
    f = _function(args)
    n = args.n_pairs
    if f.zeros.tail is None and n > f.zeros.stored_count:
        n = f.zeros.stored_count
        print(f"note: no tail model, using n_pairs = {n}", file=sys.stderr)
    rows = run_checks(f, _policy(args, n), args.euler)
    for name, status, metric, threshold in rows:
        print(f"{status:4}  {name}  (metric {metric:.6g}, threshold {threshold:.6g})", file=sys.stderr)
    failed = [r for r in rows if r[1] == "FAIL"]
    print(f"{len(rows) - len(failed)} of {len(rows)} checks passed or noted; {len(failed)} failed",
          file=sys.stderr)
    _emit(args, ("check", "status", "metric", "threshold"), rows)
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="classj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, function_required=True):
        src = p.add_mutually_exclusive_group(required=function_required)
        src.add_argument("--euler", action="store_true", help="built-in cos/cosh lattice")
        src.add_argument("--file", metavar="PATH", help="FunctionConfig JSON document")
        p.add_argument("--n-pairs", type=int, default=10_000)
        p.add_argument("--tail", choices=("none", "integral"), default="integral")
        p.add_argument("--output", metavar="PATH")
        p.add_argument("--json", action="store_true", help="emit rows as a JSON array")

    modes = ("Y", "X", "PRODUCT", "SERIES")
    p = sub.add_parser("eval", help="evaluate at a list of points")
    common(p)
    p.add_argument("--mode", choices=modes, default="Y")
    p.add_argument("--points", required=True, help="comma-separated reals or complex literals like 1+2j")
    p.add_argument("--k", type=int, default=6, help="series order for SERIES mode")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("convergence", help="tabulate a value over a ladder of n_pairs")
    common(p)
    p.add_argument("--mode", choices=modes, default="Y")
    p.add_argument("--point", required=True)
    p.add_argument("--ladder", type=_int_list, required=True)
    p.add_argument("--k", type=int, default=6)
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("order", help="estimate the order of growth")
    common(p)
    p.add_argument("--radii", type=_float_list)
    p.add_argument("--samples", type=int, default=64, help="points sampled per circle")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("verify", help="run the symmetry and oracle checks")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coeffs", help="Taylor coefficients recovered from the zeros")
    common(p)
    p.add_argument("--k", type=int, default=5)
    p.set_defaults(func=cmd_coeffs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClassJError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
