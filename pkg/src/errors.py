"""Exception hierarchy for WaringLab operations."""

from datetime import datetime, timezone
from typing import Any


class WaringError(Exception):
    """Base exception for all WaringLab errors."""

    def __init__(self, message: str, operation: str = "unknown", **context: Any):
        super().__init__(message)
        self.operation = operation
        self.context = context
        self.audit = {
            "error_type": self.__class__.__name__,
            "message": message,
            "operation": operation,
            "context": {key: repr(value) for key, value in context.items()},
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }


class FieldMismatchError(WaringError):
    """Exception for operations mixing two different fields or moduli."""
    pass


class PreconditionError(WaringError):
    """Exception for a violated precondition of an operation."""
    pass


class EmptySystemError(WaringError):
    """Exception for member extraction from an empty linear system."""
    pass


class RankDeficientError(WaringError):
    """Exception for a linear parametrization without full column rank."""
    pass


class DegenerateEliminationError(WaringError):
    """Exception for an elimination whose leading coefficient vanished.

    Callers are expected to retry with a fresh randomization.
    """
    pass


class SamplingError(WaringError):
    """Exception for a field too small to sample distinct points."""
    pass


class ConfigError(WaringError):
    """Exception for malformed run configuration or environment values."""
    pass
