"""Evaluation and verification of class-J entire functions from their zeros."""

from .core import (
    BetaIsZero,
    ClassJError,
    ClassJFunction,
    CoefficientTable,
    EvalResult,
    InsufficientRadii,
    InvalidBracket,
    InvalidLattice,
    LatticeExhausted,
    LatticeReport,
    NoSignChange,
    Overflow,
    SeriesNotConverged,
    TailCorrection,
    TailDominates,
    TailModel,
    TruncationPolicy,
    ZeroLattice,
    ZeroNormalization,
    make_function,
    validate_lattice,
)
from .evaluators import (
    X_eval,
    Y_eval,
    even_series_eval,
    normalization_at_origin,
    paired_product_eval,
    recentered_product_eval,
)
from .analysis import (
    OrderEstimate,
    SummabilityReport,
    Verdict,
    check_duality,
    check_reflection,
    circle_log_max_modulus,
    coefficients_from_zeros,
    estimate_order,
    refine_zero,
    summability_report,
)
from .euler import EulerInstance, make_euler, reference_cos, reference_cosh

__version__ = "0.1.0"
