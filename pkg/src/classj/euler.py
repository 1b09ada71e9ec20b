"""The cosine/hyperbolic-cosine lattice and scalar oracles that share no code
with the product or series kernels.

One lattice, ``ell = 0`` and ``tau_k = (k - 1/2) * pi``, serves both cases:
its vertical restriction is ``cos`` and its horizontal restriction is
``cosh``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import ClassJFunction, CoefficientTable, Overflow, TailModel, ZeroLattice

DEFAULT_STORED = 10**6

# pi/2 split into 33 + 33 + 53 significant bits (Cody-Waite)
_PIO2_1 = 1.5707963267341256
_PIO2_2 = 6.077100506303966e-11
_PIO2_3 = 2.0222662487959506e-21
# ln 2 split into 32 + 53 significant bits
_LN2_HI = 0.6931471803691238
_LN2_LO = 1.9082149292705877e-10


@dataclass(frozen=True, eq=False)
class EulerInstance:
    f: ClassJFunction


@lru_cache(maxsize=4)
def make_euler(stored: int = DEFAULT_STORED) -> EulerInstance:
    k = np.arange(1, stored + 1, dtype=float)
    tau = (k - 0.5) * math.pi
    lattice = ZeroLattice(0.0, tau, TailModel(math.pi, -math.pi / 2))
    return EulerInstance(ClassJFunction(lattice, 1.0))


def cos_table(K: int) -> CoefficientTable:
    return CoefficientTable(0.0, [(-1) ** k / math.factorial(2 * k) for k in range(K + 1)])


def cosh_table(K: int) -> CoefficientTable:
    return CoefficientTable(0.0, [1.0 / math.factorial(2 * k) for k in range(K + 1)])


def _series(x2: float, first: float, step) -> float:
    # sum first * prod(step(k) * x2) until the terms stop changing the total
    total = term = first
    k = 1
    while True:
        term *= x2 * step(k)
        new = total + term
        if new == total:
            return new
        total = new
        k += 1


def _cos_small(r: float) -> float:
    return _series(r * r, 1.0, lambda k: -1.0 / ((2 * k - 1) * (2 * k)))


def _sin_small(r: float) -> float:
    return _series(r * r, r, lambda k: -1.0 / ((2 * k) * (2 * k + 1)))


def _reduce_half_pi(t: float) -> tuple[int, float]:
    if not abs(t) <= 1e6:
        raise ValueError(f"|t| must be <= 1e6, got {t!r}")
    n = round(t / _PIO2_1)
    r = ((t - n * _PIO2_1) - n * _PIO2_2) - n * _PIO2_3
    return n % 4, r


def reference_cos(t: float) -> float:
    q, r = _reduce_half_pi(float(t))
    return (_cos_small(r), -_sin_small(r), -_cos_small(r), _sin_small(r))[q]


def reference_sin(t: float) -> float:
    q, r = _reduce_half_pi(float(t))
    return (_sin_small(r), _cos_small(r), -_sin_small(r), -_cos_small(r))[q]


def _reference_exp(x: float) -> float:
    n = round(x / _LN2_HI)
    r = (x - n * _LN2_HI) - n * _LN2_LO
    return math.ldexp(_series(r, 1.0, lambda k: 1.0 / k), n)


def reference_cosh(x: float) -> float:
    x = float(x)
    if not abs(x) <= 700:
        raise Overflow(f"cosh({x!r}) is outside the supported range |x| <= 700")
    return 0.5 * (_reference_exp(x) + _reference_exp(-x))


def reference_sinh(x: float) -> float:
    x = float(x)
    if not abs(x) <= 700:
        raise Overflow(f"sinh({x!r}) is outside the supported range |x| <= 700")
    if abs(x) < 0.5:
        return _series(x * x, x, lambda k: 1.0 / ((2 * k) * (2 * k + 1)))
    return 0.5 * (_reference_exp(x) - _reference_exp(-x))


def reference_cosh_complex(s: complex) -> complex:
    """cosh(a + ib) = cosh a cos b + i sinh a sin b, from the scalar oracles."""
    s = complex(s)
    return complex(reference_cosh(s.real) * reference_cos(s.imag),
                   reference_sinh(s.real) * reference_sin(s.imag))
