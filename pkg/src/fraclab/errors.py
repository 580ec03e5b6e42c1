"""Exception types shared across the package."""


class FracLabError(Exception):
    """Base class for all package errors."""


class DomainError(FracLabError, ValueError):
    """An argument lies outside the domain of an operation.

    ``point`` carries the offending location when one is known.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class ConvergenceError(FracLabError, RuntimeError):
    """Adaptive quadrature hit its subdivision limits."""


class CapabilityError(FracLabError):
    """A test function cannot supply the requested derivative order."""


class ConfigError(FracLabError, ValueError):
    """Configuration document failed to parse or validate."""
