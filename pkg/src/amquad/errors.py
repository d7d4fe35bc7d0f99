"""Exception types shared across the package."""

from __future__ import annotations


class AmquadError(Exception):
    """Base class for all package errors."""


class EvaluationError(AmquadError, ValueError):
    """A function produced a non-finite value at some point."""

    def __init__(self, message: str, point: float | tuple | None = None):
        super().__init__(message)
        self.point = point


class ConvergenceError(AmquadError, RuntimeError):
    """Adaptive integration failed to reach the requested tolerance.

    The best available estimate is kept on the exception so callers can
    still report something.
    """

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


class DomainError(AmquadError, ValueError):
    """One or more evaluation points fall outside a function's domain."""

    def __init__(self, message: str, points: tuple[float, ...] = ()):
        super().__init__(message)
        self.points = points


class ConfigError(AmquadError, ValueError):
    """Malformed campaign configuration or CLI input."""
