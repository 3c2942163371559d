"""Exception types raised across the package."""


class LieHYError(Exception):
    """Base class for all package errors."""


class ConfigurationError(LieHYError, ValueError):
    """Inadmissible group/grid/run configuration."""


class DomainError(LieHYError, ValueError):
    """Argument outside the domain of an operation."""


class NyquistError(DomainError):
    """Requested torus frequency is not resolved by the sampling grid."""


class SingularPointError(DomainError):
    """Evaluation point lies (numerically) on the zero set of A_delta."""


class ClosureError(LieHYError, RuntimeError):
    """Weyl group generation did not close (broken root system)."""
