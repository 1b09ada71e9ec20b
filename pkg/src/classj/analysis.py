"""Growth, summability, coefficient recovery, zero refinement and the
symmetry predicates for class-J functions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect

from .core import (
    ClassJFunction,
    CoefficientTable,
    InsufficientRadii,
    InvalidBracket,
    InvalidLattice,
    NoSignChange,
    TailCorrection,
    TailDominates,
    TruncationPolicy,
    ZeroLattice,
    validate_lattice,
)
from . import _dd
from .evaluators import Y_eval, _tail_weight, paired_product_eval


@dataclass(frozen=True)
class OrderEstimate:
    slope: float
    intercept: float
    radii: tuple[float, ...]
    max_residual: float


class Verdict(enum.Enum):
    APPARENTLY_CONVERGENT = "APPARENTLY_CONVERGENT"
    APPARENTLY_DIVERGENT = "APPARENTLY_DIVERGENT"


@dataclass(frozen=True)
class SummabilityReport:
    """Partial sums of 1/|rho_k| and 1/|rho_k|^2, one term per conjugate pair.

    Sums over the full zero set are exactly twice these.
    ``square_limit`` adds the tail estimate to the last inverse-square sum.
    """

    partial_inverse_sum: tuple[tuple[int, float], ...]
    partial_inverse_square_sum: tuple[tuple[int, float], ...]
    verdict_inverse: Verdict
    verdict_square: Verdict
    square_limit: float


def estimate_order(max_modulus: Callable[[float], float], radii: Sequence[float],
                   log_scale: bool = False) -> OrderEstimate:
    """Least-squares slope of log log M(r) against log r.

    With ``log_scale=True`` the callable returns log M(r) instead of M(r),
    which keeps fast-growing controls such as exp(r^2) out of overflow.
    Radii where M(r) < e contribute nothing and are dropped.
    """
    radii = [float(r) for r in radii]
    if any(r <= math.e for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing and all greater than e")
    used, ys = [], []
    for r in radii:
        m = max_modulus(r)
        log_m = m if log_scale else (math.log(m) if m > 0 else -math.inf)
        if math.isfinite(log_m) and log_m >= 1.0:
            used.append(r)
            ys.append(math.log(log_m))
    if len(used) < 3:
        raise InsufficientRadii(f"need at least 3 usable radii, got {len(used)}")
    x = np.log(used)
    y = np.array(ys)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return OrderEstimate(float(slope), float(intercept), tuple(used), float(np.max(np.abs(resid))))


def circle_log_max_modulus(f: ClassJFunction, policy: TruncationPolicy,
                           samples: int = 64) -> Callable[[float], float]:
    """log max |L| over ``samples`` equispaced points on |s - ell| = r.

    The paired product is summed in log form so large radii do not overflow.
    """
    policy.check(f.zeros)
    tau2 = f.zeros.taus(policy.n_pairs) ** 2
    theta = 2 * np.pi * np.arange(samples) / samples
    log_center = math.log(abs(f.value_at_center))

    def log_m(r: float) -> float:
        u2 = (r * np.exp(1j * theta)) ** 2
        acc = np.zeros(samples)
        with np.errstate(divide="ignore"):
            for start in range(0, tau2.size, 1 << 15):
                chunk = tau2[start:start + (1 << 15)]
                acc += np.sum(np.log(np.abs(1.0 + u2[:, None] / chunk[None, :])), axis=1)
        return log_center + float(np.max(acc))

    return log_m


def _growth_verdict(cum: np.ndarray, cps: Sequence[int]) -> Verdict:
    n10, n5, n2, n = cps
    early = cum[n5 - 1] - cum[n10 - 1]
    late = cum[n - 1] - cum[n2 - 1]
    # log-like growth adds equal increments over equal log-ratios
    scale = math.log(n / n2) / math.log(n5 / n10)
    if late > 0.5 * scale * early:
        return Verdict.APPARENTLY_DIVERGENT
    return Verdict.APPARENTLY_CONVERGENT


def summability_report(z: ZeroLattice, N: int, policy: TruncationPolicy) -> SummabilityReport:
    report = validate_lattice(z)
    if not report:
        raise InvalidLattice(report)
    if N < 10:
        raise ValueError(f"N must be >= 10, got {N}")
    TruncationPolicy(N).check(z)
    tau = z.taus(N)
    mod2 = z.ell * z.ell + tau * tau
    inv = np.cumsum(1.0 / np.sqrt(mod2))
    sq = np.cumsum(1.0 / mod2)
    cps = (N // 10, N // 5, N // 2, N)
    tail = _tail_weight(z, TruncationPolicy(N, policy.tail_correction), complex(z.ell * z.ell))
    return SummabilityReport(
        tuple((c, float(inv[c - 1])) for c in cps),
        tuple((c, float(sq[c - 1])) for c in cps),
        _growth_verdict(inv, cps),
        _growth_verdict(sq, cps),
        float(sq[-1]) + tail,
    )


def _power_tail(z: ZeroLattice, n: int, j: int, integral: bool) -> float:
    """Discarded part of sum_k tau_k^(-2j) beyond the first n pairs."""
    m = z.stored_count
    total = 0.0
    if n < m:
        total += float(np.sum(z.tau[n:] ** (-2.0 * j)))
    if integral and z.tail is not None:
        a, b = z.tail.a, z.tail.b
        first = max(n, m) + 1
        start = max(first - 1, math.floor(-b / a) + 1)
        for k in range(first, start + 1):
            total += (a * k + b) ** (-2.0 * j)
        total += (a * start + b) ** (1 - 2 * j) / (a * (2 * j - 1))
    return total


def _power_sums_dd(f: ClassJFunction, K: int, policy: TruncationPolicy):
    z = f.zeros
    policy.check(z)
    xh, xl = _dd.reciprocal_square(z.taus(policy.n_pairs))
    integral = policy.tail_correction is TailCorrection.INTEGRAL
    ph, pl = np.empty(K), np.empty(K)
    yh, yl = xh, xl
    for j in range(1, K + 1):
        if j > 1:
            yh, yl = _dd.mul(yh, yl, xh, xl)
        h, l = _dd.total(yh, yl)
        if integral:
            h, l = _dd.add(h, l, _power_tail(z, policy.n_pairs, j, True), 0.0)
        elif j == 1:
            est = _power_tail(z, policy.n_pairs, 1, True)
            if est > 0.1 * h:
                raise TailDominates(
                    f"estimated tail {est:.3g} of p_1 exceeds 10% of the partial sum {h:.3g}"
                )
        ph[j - 1], pl[j - 1] = h, l
    return ph, pl


def power_sums(f: ClassJFunction, K: int, policy: TruncationPolicy) -> np.ndarray:
    """p_j = sum_k tau_k^(-2j) for j = 1..K over the truncated (and tail-corrected) lattice."""
    ph, pl = _power_sums_dd(f, K, policy)
    return ph + pl


def _newton_dd(ph, pl):
    K = len(ph)
    eh, el = np.zeros(K + 1), np.zeros(K + 1)
    eh[0] = 1.0
    for k in range(1, K + 1):
        ah = al = 0.0
        for i in range(1, k + 1):
            th, tl = _dd.mul(eh[k - i], el[k - i], ph[i - 1], pl[i - 1])
            if i % 2 == 0:
                th, tl = -th, -tl
            ah, al = _dd.add(ah, al, th, tl)
        eh[k], el[k] = _dd.div_float(ah, al, float(k))
    return eh, el


def newton_elementary(p: Sequence[float]) -> np.ndarray:
    """Elementary symmetric functions e_0..e_K from power sums p_1..p_K.

    The recurrence ``k e_k = sum_i (-1)^(i-1) e_(k-i) p_i`` cancels heavily,
    so it is carried out in double-double arithmetic.
    """
    p = np.asarray(p, dtype=float)
    eh, el = _newton_dd(p, np.zeros_like(p))
    return eh + el


def coefficients_from_zeros(f: ClassJFunction, K: int, policy: TruncationPolicy) -> CoefficientTable:
    """X-form Taylor coefficients of ``L(ell) * prod (1 + x^2/tau_k^2)``.

    Power sums and Newton's identities run in double-double arithmetic; the
    conversion is still ill-conditioned, so on the cosine lattice the error
    of the tail estimate limits useful output to roughly the first fourteen
    coefficients. Use ``table.alternated()`` for the Y-form.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    eh, el = _newton_dd(*_power_sums_dd(f, K, policy))
    e = eh + el
    lc = f.value_at_center
    c = e * lc.real if lc.imag == 0 else e * lc
    return CoefficientTable(f.ell, c)


def refine_zero(f: ClassJFunction, lo: float, hi: float, tol: float,
                policy: TruncationPolicy) -> float:
    """Bisect a sign change of Y on [lo, hi] down to width ``tol``."""
    lo, hi = float(lo), float(hi)
    if not (0 < lo < hi):
        raise InvalidBracket(f"need 0 < lo < hi, got [{lo!r}, {hi!r}]")

    def g(t):
        return (Y_eval(f, t, policy).value / f.value_at_center).real

    glo, ghi = g(lo), g(hi)
    if glo == 0:
        return lo
    if ghi == 0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise NoSignChange(f"Y has the same sign at {lo!r} and {hi!r}")
    return bisect(g, lo, hi, xtol=tol, maxiter=2000)


def ulp_gap(a: complex, b: complex) -> float:
    """Largest component-wise distance between a and b, in ulps of the larger."""
    gap = 0.0
    for x, y in ((a.real, b.real), (a.imag, b.imag)):
        if x != y:
            gap = max(gap, abs(x - y) / math.ulp(max(abs(x), abs(y))))
    return gap


def check_reflection(f: ClassJFunction, s, policy: TruncationPolicy) -> tuple[complex, complex, float]:
    s = complex(s)
    lhs = paired_product_eval(f, s, policy).value
    rhs = paired_product_eval(f, 2 * f.ell - s, policy).value
    return lhs, rhs, ulp_gap(lhs, rhs)


def x_at_imaginary(f: ClassJFunction, t: float, policy: TruncationPolicy) -> complex:
    """L(ell) * prod (1 + (it)^2/tau_k^2) with complex factors throughout."""
    policy.check(f.zeros)
    tau = f.zeros.taus(policy.n_pairs)
    it = complex(0.0, t)
    factors = 1.0 + (it * it) / (tau * tau).astype(complex)
    return f.value_at_center * complex(np.prod(factors))


def check_duality(f: ClassJFunction, t: float, policy: TruncationPolicy) -> tuple[complex, complex, float]:
    y = Y_eval(f, t, policy).value
    x = x_at_imaginary(f, t, policy)
    return y, x, ulp_gap(y, x)
