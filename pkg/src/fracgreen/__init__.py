"""Numerical evaluation of space-time fractional diffusion kernels.

Fundamental solutions of the diffusion equation with a two-parameter
composite time derivative and an asymmetric space-fractional derivative,
computed by three mutually cross-validating routes (inverse Fourier
quadrature, power/asymptotic series, Mellin-Barnes contour), together with
full initial-value/source solutions on periodic grids and fractional-order
moments.
"""

from .errors import (
    BoundaryLeak,
    ConstraintViolation,
    ContourInvalid,
    DivergentAtOrigin,
    DomainViolation,
    FracGreenError,
    GammaPole,
    ImaginaryResidueTooLarge,
    NonConvergentTail,
    NonSimplePoles,
    PoleAtBMinusA,
    ToleranceNotMet,
    UnsupportedAtBoundary,
)
from .params import (
    DiffusionParams,
    MultiTermParams,
    QuadratureConfig,
    Term,
    order_weight,
    params_from_dict,
    params_from_json,
    params_to_json,
    time_exponent,
    validate,
)

__all__ = [
    "BoundaryLeak", "ConstraintViolation", "ContourInvalid", "DivergentAtOrigin",
    "DomainViolation", "FracGreenError", "GammaPole", "ImaginaryResidueTooLarge",
    "NonConvergentTail", "NonSimplePoles", "PoleAtBMinusA", "ToleranceNotMet",
    "UnsupportedAtBoundary",
    "DiffusionParams", "MultiTermParams", "QuadratureConfig", "Term",
    "order_weight", "params_from_dict", "params_from_json", "params_to_json",
    "time_exponent", "validate",
]

__version__ = "0.1.0"
