"""Evaluation kernels: even Taylor series, paired Hadamard products and the
restricted Y/X forms.

Every product kernel works in the center-form ``u = s - ell`` and fuses each
conjugate zero pair into one factor ``1 + u**2 / tau_k**2``, which converges
absolutely even when the one-sided factors do not. The reported tail bound
covers both the discarded factors and the rounding of the running product.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    BetaIsZero,
    ClassJFunction,
    CoefficientTable,
    EvalResult,
    Overflow,
    SeriesNotConverged,
    TailCorrection,
    TruncationPolicy,
    ZeroLattice,
    ZeroNormalization,
    as_complex,
)

_UNIT_ROUNDOFF = 2.0**-53
ZERO_COLLISION_TOL = 1e-12


def _rounding_slack(n_factors: int, ops_per_factor: int) -> float:
    """Relative error bound gamma_m = m*u/(1 - m*u) for m rounded operations."""
    m = n_factors * ops_per_factor * _UNIT_ROUNDOFF
    return m / (1.0 - m)


def _affine_inverse_sum(z: ZeroLattice, first: int, shift2: complex) -> float:
    """Upper bound on sum_{k >= first} 1/|shift2 + tau_k**2| under the tail model.

    Uses |shift2 + tau**2| >= tau**2 - c**2 with c = sqrt(|shift2|); terms
    where that is not yet positive or where the integral comparison is not
    valid are summed exactly first.
    """
    a, b = z.tail.a, z.tail.b
    c = math.sqrt(abs(shift2))
    # integral from N bounds the sum from N+1 once a*N+b > c
    n_int = max(first - 1, math.floor((c - b) / a) + 1)
    explicit = 0.0
    for k in range(first, n_int + 1):
        t = a * k + b
        explicit += 1.0 / abs(shift2 + t * t)
    y = a * n_int + b
    if c == 0.0:
        integral = 1.0 / (a * y)
    else:
        integral = math.log1p(2.0 * c / (y - c)) / (2.0 * a * c)
    return explicit + integral


def _tail_weight(z: ZeroLattice, policy: TruncationPolicy, shift2: complex = 0.0) -> float:
    """Bound on sum over discarded pairs of 1/|shift2 + tau_k**2|."""
    n, m = policy.n_pairs, z.stored_count
    total = 0.0
    if n < m:
        rest = z.tau[n:]
        if shift2 == 0:
            total += float(np.sum(1.0 / (rest * rest)))
        else:
            total += float(np.sum(1.0 / np.abs(shift2 + rest * rest)))
    if policy.tail_correction is TailCorrection.INTEGRAL and z.tail is not None:
        total += _affine_inverse_sum(z, max(n, m) + 1, shift2)
    return total


def _bound(value: complex, tail_sum: float, n_inexact: int, ops: int) -> float:
    mag = abs(value)
    if mag == 0.0:
        return 0.0
    bound = mag * (math.expm1(tail_sum) + _rounding_slack(n_inexact, ops) * math.exp(tail_sum))
    if not math.isfinite(bound):
        raise Overflow(f"tail bound overflows (tail sum {tail_sum!r})")
    return bound


def even_series_eval(coeffs: CoefficientTable, u, K: int | None = None) -> EvalResult:
    """Sum ``c_0 + c_1 u^2 + ... + c_K u^(2K)``.

    The tail estimate is empirical: it continues the last term geometrically
    with the largest of the table's last three coefficient ratios.
    """
    u = as_complex(u, "u")
    K = coeffs.K if K is None else int(K)
    if not 0 <= K <= coeffs.K:
        raise ValueError(f"K must be in [0, {coeffs.K}], got {K}")
    w = u * u
    c = coeffs.c
    value = complex(c[K])
    for k in range(K - 1, -1, -1):
        value = value * w + c[k]

    aw = abs(w)
    if aw == 0.0:
        return EvalResult(value, 0.0, K)
    mags = np.abs(c[max(0, coeffs.K - 3):])
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = mags[1:] / mags[:-1]
    r = float(np.max(ratios)) if ratios.size else 0.0
    if not math.isfinite(r) or aw * r >= 1.0:
        raise SeriesNotConverged(
            f"coefficient ratio {r:.3g} does not contract at |u|^2 = {aw:.3g}"
        )
    last = float(abs(c[K])) * aw**K
    return EvalResult(value, last * aw * r / (1.0 - aw * r), K)


def _paired(f: ClassJFunction, u2: complex, policy: TruncationPolicy) -> EvalResult:
    """L(ell) * prod (1 + u2/tau_k^2) for a precomputed squared displacement."""
    z = f.zeros
    policy.check(z)
    tau = z.taus(policy.n_pairs)
    if u2 == 0:
        return EvalResult(f.value_at_center, 0.0, policy.n_pairs)
    if u2.imag == 0:
        factors = 1.0 + u2.real / (tau * tau)
    else:
        factors = 1.0 + u2 / (tau * tau)
    value = f.value_at_center * complex(np.prod(factors))
    t_sum = abs(u2) * _tail_weight(z, policy)
    return EvalResult(value, _bound(value, t_sum, tau.size, 4), policy.n_pairs)


def paired_product_eval(f: ClassJFunction, s, policy: TruncationPolicy) -> EvalResult:
    """Evaluate ``L(s) = L(ell) * prod_k (1 + (s - ell)^2 / tau_k^2)``."""
    s = as_complex(s, "s")
    u = s - f.ell
    return _paired(f, u * u, policy)


def Y_eval(f: ClassJFunction, t: float, policy: TruncationPolicy) -> EvalResult:
    """Restriction to the vertical line, ``Y(t) = L(ell + i t)``."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    return _paired(f, complex(-(t * t), 0.0), policy)


def X_eval(f: ClassJFunction, x: float, policy: TruncationPolicy) -> EvalResult:
    """Restriction to the horizontal line, ``X(x) = L(ell + x)``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"x must be finite, got {x!r}")
    return _paired(f, complex(x * x, 0.0), policy)


def _collides(z: ZeroLattice, beta: complex) -> bool:
    if abs(beta.real - z.ell) > ZERO_COLLISION_TOL:
        return False
    y = abs(beta.imag)
    tau = z.tau
    i = int(np.searchsorted(tau, y))
    for j in (i - 1, i):
        if 0 <= j < tau.size and math.hypot(beta.real - z.ell, y - tau[j]) <= ZERO_COLLISION_TOL:
            return True
    if z.tail is not None:
        k = round((y - z.tail.b) / z.tail.a)
        for j in (k - 1, k, k + 1):
            if j > z.stored_count and math.hypot(beta.real - z.ell, y - z.tail.tau(j)) <= ZERO_COLLISION_TOL:
                return True
    return False


def recentered_product_eval(f: ClassJFunction, s, beta, value_at_beta,
                            policy: TruncationPolicy) -> EvalResult:
    """Product anchored at an arbitrary non-zero point ``beta``.

    ``L(s) = L(beta) * prod_k [(rho_k - s)(conj_k - s)] / [(rho_k - beta)(conj_k - beta)]``
    with ``rho_k = ell + i tau_k`` and ``conj_k = ell - i tau_k``.
    """
    s = as_complex(s, "s")
    beta = as_complex(beta, "beta")
    lb = as_complex(value_at_beta, "value_at_beta")
    if lb == 0:
        raise ZeroNormalization("value_at_beta must be nonzero")
    z = f.zeros
    if _collides(z, beta):
        raise BetaIsZero(f"beta = {beta!r} coincides with a lattice zero")
    policy.check(z)
    tau = z.taus(policy.n_pairs)
    rho = z.ell + 1j * tau
    conj = z.ell - 1j * tau
    factors = ((rho - s) * (conj - s)) / ((rho - beta) * (conj - beta))
    value = lb * complex(np.prod(factors))

    ds = z.ell - s
    db = z.ell - beta
    shift2 = db * db
    t_sum = abs(ds * ds - shift2) * _tail_weight(z, policy, shift2)
    return EvalResult(value, _bound(value, t_sum, tau.size, 12), policy.n_pairs)


def normalization_at_origin(f: ClassJFunction, policy: TruncationPolicy) -> EvalResult:
    """Recover ``L(0)`` from ``L(ell)`` through the paired product at ``s = 0``."""
    return X_eval(f, -f.ell, policy)
