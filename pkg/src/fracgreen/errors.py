"""Exception types shared by every evaluation route."""

from __future__ import annotations


class FracGreenError(Exception):
    """Base class for all library errors."""


class ConstraintViolation(FracGreenError):
    """One or more parameter constraints failed.

    ``violations`` is a list of ``(field, bound)`` pairs covering *every*
    violated constraint, not just the first one found.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{field}: {bound}" for field, bound in self.violations)
        super().__init__(msg)


class ToleranceNotMet(FracGreenError):
    """A quadrature or series failed to reach the requested tolerance.

    Carries the tolerance actually achieved so callers can decide whether
    the partially converged value is still useful.
    """

    def __init__(self, achieved, message=""):
        self.achieved = float(achieved)
        super().__init__(message or f"requested tolerance not met (achieved {achieved:.3e})")


class PoleAtBMinusA(FracGreenError):
    """The leading algebraic tail coefficient 1/Gamma(b-a) sits on a pole."""


class UnsupportedAtBoundary(FracGreenError):
    """Parameters sit on a degenerate boundary where this route returns garbage."""


class DivergentAtOrigin(FracGreenError):
    """The kernel diverges at x=0 for this parameter combination (alpha <= 1)."""


class ImaginaryResidueTooLarge(FracGreenError):
    """The assembled inverse-Fourier integral has a non-negligible imaginary part.

    This signals a symbol/conjugation bug; it is never swallowed.
    """

    def __init__(self, residue, limit):
        self.residue = float(residue)
        self.limit = float(limit)
        super().__init__(f"imaginary residue {residue:.3e} exceeds {limit:.3e}")


class NonSimplePoles(FracGreenError):
    """Poles of the two gamma families in the series collide; the printed
    expansion is invalid there and the caller must use another route."""


class ContourInvalid(FracGreenError):
    """The Mellin-Barnes abscissa violates the pole-separation invariant."""


class DomainViolation(FracGreenError):
    """An argument lies outside the validity strip of a closed form."""


class GammaPole(FracGreenError):
    """A gamma factor of a closed form hit a non-positive integer."""


class NonConvergentTail(FracGreenError):
    """The moment integral diverges at infinity for this order."""


class BoundaryLeak(FracGreenError):
    """The solution has not decayed at the edge of the periodic grid."""

    def __init__(self, leak, limit):
        self.leak = float(leak)
        self.limit = float(limit)
        super().__init__(f"boundary magnitude {leak:.3e} exceeds {limit:.3e}; widen the grid")
