"""
Exception types raised by GaloisCensus.

All of them derive from ValueError so callers that only know about built-in
exceptions keep working.
"""


class GaloisCensusError(ValueError):
    """Base class for every error raised by this package."""


class InvalidArgumentError(GaloisCensusError):
    """An argument is outside the domain of the operation."""


class BoundExceededError(GaloisCensusError):
    """A brute-force or constructive enumeration was asked to go past its bound."""


class CanonicalizationError(GaloisCensusError):
    """A generated subgroup does not match the S_{x,i} family."""


class InadmissibleAutomorphismError(GaloisCensusError):
    """The curve does not carry an automorphism of the requested order."""


class CurveError(GaloisCensusError):
    """Invalid curve data or a point that is not on the curve."""


class TorsionNotRationalError(GaloisCensusError):
    """The full m-torsion of the curve is not defined over the base field."""


class WitnessError(GaloisCensusError):
    """A finite-field identity check produced an inconsistent result."""
