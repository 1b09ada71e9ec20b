"""Domain types for class-J entire functions and the lattice invariant checks.

A class-J function is fixed by a real center ``ell``, the positive imaginary
offsets ``tau_k`` of its zeros ``ell +/- i*tau_k`` and the nonzero value it
takes at the center. Zeros are always stored as positive representatives and
expanded to conjugate pairs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


class ClassJError(Exception):
    """Base class for every error raised by this package."""


class InvalidLattice(ClassJError):
    def __init__(self, report: "LatticeReport"):
        super().__init__(str(report))
        self.report = report


class LatticeExhausted(ClassJError):
    pass


class SeriesNotConverged(ClassJError):
    pass


class BetaIsZero(ClassJError):
    pass


class ZeroNormalization(ClassJError):
    pass


class InsufficientRadii(ClassJError):
    pass


class TailDominates(ClassJError):
    pass


class NoSignChange(ClassJError):
    pass


class InvalidBracket(ClassJError):
    pass


class Overflow(ClassJError, OverflowError):
    pass


def as_complex(value, name: str = "value") -> complex:
    """Coerce to a finite Python complex, rejecting NaN and infinities."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


@dataclass(frozen=True)
class TailModel:
    """Affine model ``tau_k ~ a*k + b`` for zeros beyond the stored prefix."""

    a: float
    b: float

    def tau(self, k):
        return self.a * k + self.b


@dataclass(frozen=True, eq=False)
class ZeroLattice:
    ell: float
    tau: np.ndarray
    tail: Optional[TailModel] = None

    def __post_init__(self):
        tau = np.array(self.tau, dtype=float).reshape(-1)
        tau.setflags(write=False)
        object.__setattr__(self, "ell", float(self.ell))
        object.__setattr__(self, "tau", tau)

    @property
    def stored_count(self) -> int:
        return int(self.tau.size)

    def taus(self, n: int) -> np.ndarray:
        """First ``n`` positive zero offsets, extended by the tail model if needed."""
        if n <= self.stored_count:
            return self.tau[:n]
        if self.tail is None:
            raise LatticeExhausted(
                f"{n} pairs requested but only {self.stored_count} stored and no tail model"
            )
        extra = self.tail.tau(np.arange(self.stored_count + 1, n + 1, dtype=float))
        return np.concatenate([self.tau, extra])

    def zeros(self, n: Optional[int] = None) -> np.ndarray:
        """Expanded zero set ``ell +/- i*tau_k`` for the first ``n`` pairs."""
        t = self.taus(self.stored_count if n is None else n)
        return np.concatenate([self.ell + 1j * t, self.ell - 1j * t])


@dataclass(frozen=True)
class LatticeReport:
    invariant: Optional[str] = None
    index: Optional[int] = None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.invariant is None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        where = f" at index {self.index}" if self.index is not None else ""
        return f"violation({self.invariant}{where}): {self.detail}"


def validate_lattice(z: ZeroLattice) -> LatticeReport:
    """Check every ZeroLattice invariant and report the first violation.

    Indices in the report are 1-based, matching ``tau_1, tau_2, ...``.
    """
    if not math.isfinite(z.ell):
        return LatticeReport("finite", None, f"ell = {z.ell!r}")
    tau = z.tau
    if tau.size < 1:
        return LatticeReport("nonempty", None, "at least one stored zero is required")
    bad = np.flatnonzero(~np.isfinite(tau))
    if bad.size:
        i = int(bad[0])
        return LatticeReport("finite", i + 1, f"tau = {tau[i]!r}")
    bad = np.flatnonzero(tau <= 0)
    if bad.size:
        i = int(bad[0])
        return LatticeReport("positive", i + 1, f"tau = {tau[i]!r}")
    bad = np.flatnonzero(np.diff(tau) <= 0)
    if bad.size:
        i = int(bad[0]) + 1
        return LatticeReport(
            "strictly-increasing", i + 1, f"tau[{i + 1}] = {tau[i]!r} <= tau[{i}] = {tau[i - 1]!r}"
        )
    if z.tail is not None:
        a, b = z.tail.a, z.tail.b
        if not (math.isfinite(a) and math.isfinite(b)) or a <= 0:
            return LatticeReport("tail-slope", None, f"a = {a!r} must be finite and > 0")
        m = z.stored_count
        nxt = z.tail.tau(m + 1)
        if not nxt > tau[-1]:
            return LatticeReport(
                "tail-consistency", m + 1, f"a*(M+1)+b = {nxt!r} does not exceed tau_M = {tau[-1]!r}"
            )
    return LatticeReport()


@dataclass(frozen=True, eq=False)
class ClassJFunction:
    """A zero lattice together with the value ``L(ell)`` at its center."""

    zeros: ZeroLattice
    value_at_center: complex

    def __post_init__(self):
        report = validate_lattice(self.zeros)
        if not report:
            raise InvalidLattice(report)
        v = as_complex(self.value_at_center, "value_at_center")
        if v == 0:
            raise ZeroNormalization("L(ell) must be nonzero")
        object.__setattr__(self, "value_at_center", v)

    @property
    def ell(self) -> float:
        return self.zeros.ell


class TailCorrection(enum.Enum):
    NONE = "none"
    INTEGRAL = "integral"


@dataclass(frozen=True)
class TruncationPolicy:
    n_pairs: int = 10_000
    tail_correction: TailCorrection = TailCorrection.INTEGRAL

    def __post_init__(self):
        if int(self.n_pairs) != self.n_pairs or self.n_pairs < 1:
            raise ValueError(f"n_pairs must be a positive integer, got {self.n_pairs!r}")
        object.__setattr__(self, "n_pairs", int(self.n_pairs))
        object.__setattr__(self, "tail_correction", TailCorrection(self.tail_correction))

    def check(self, z: ZeroLattice) -> None:
        if self.n_pairs > z.stored_count and z.tail is None:
            raise LatticeExhausted(
                f"n_pairs = {self.n_pairs} exceeds the {z.stored_count} stored zeros "
                "and the lattice has no tail model"
            )


@dataclass(frozen=True)
class EvalResult:
    value: complex
    tail_bound: float
    n_used: int

    def __post_init__(self):
        if not (self.tail_bound >= 0 and math.isfinite(self.tail_bound)):
            raise ValueError(f"tail_bound must be finite and >= 0, got {self.tail_bound!r}")


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Even Taylor coefficients ``c_k = L^(2k)(center) / (2k)!`` for k = 0..K."""

    center: float
    c: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.c)
        c = c.astype(complex if np.iscomplexobj(c) else float).reshape(-1)
        if c.size < 1 or c[0] == 0:
            raise ValueError("c_0 must be present and nonzero")
        c.setflags(write=False)
        object.__setattr__(self, "center", float(self.center))
        object.__setattr__(self, "c", c)

    @property
    def K(self) -> int:
        return self.c.size - 1

    def alternated(self) -> "CoefficientTable":
        """Flip the sign of odd-index coefficients (X-form <-> Y-form)."""
        signs = (-1.0) ** np.arange(self.c.size)
        return CoefficientTable(self.center, self.c * signs)


def make_function(ell: float, tau: Sequence[float], value_at_center=1.0,
                  tail: Optional[tuple[float, float]] = None) -> ClassJFunction:
    model = TailModel(*tail) if tail is not None else None
    return ClassJFunction(ZeroLattice(ell, tau, model), value_at_center)
