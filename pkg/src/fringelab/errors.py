"""Exception types shared across the package."""


class FringelabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FringelabError, ValueError):
    """A parameter is outside the physically meaningful domain."""


class NoFringeError(DomainError):
    """The interference pattern carries no phase dependence (amplitude b = 0)."""


class DegenerateSlopeError(DomainError):
    """The fringe slope vanishes at the requested phase, so error propagation diverges."""


class BranchDomainError(DomainError):
    """The optimal-phase arccos argument lies outside [-1, 1] beyond rounding tolerance."""


class TruncationCapError(FringelabError, RuntimeError):
    """The photon-number series did not converge within the summation cap."""


class NoMinimumError(FringelabError, RuntimeError):
    """A numeric minimization found no finite objective value on its grid."""


class ConfigError(FringelabError, ValueError):
    """A CLI or sweep configuration document failed validation."""
