"""Exception types raised by the public API.

Everything derives from :class:`KineticLabError` so callers can catch the
whole family at once.  Overflow during parameter scaling raises the builtin
``OverflowError`` instead, since that is what it is.
"""


class KineticLabError(ValueError):
    """Base class for domain errors raised by this package."""


class DomainTooSmallError(KineticLabError):
    """Open grid does not contain the density out to its decay threshold."""


class WrongBoundaryError(KineticLabError):
    """Density family and grid boundary condition are incompatible."""


class EmptyDensityError(KineticLabError):
    """Density is identically zero where a positive density is required."""


class OrthogonalityViolationError(KineticLabError):
    """Orbital set fails the pairwise orthogonality tolerance."""


class NonPositiveDensityError(KineticLabError):
    """Mean density must be strictly positive."""


class NonPositiveValueError(KineticLabError):
    """Functional evaluated to a non-positive value where a log is needed."""


class NonPositiveTargetError(KineticLabError):
    """Target density for the constrained search must be strictly positive."""
