"""
Exception hierarchy for the Point Pattern Rate-Distortion Toolkit.

Every error also derives from ValueError so callers that only know the
builtin type keep working.
"""

from typing import Any, Dict, Optional


class RateDistortionError(ValueError):
    """Base class for all toolkit errors."""


class DimensionError(RateDistortionError):
    """Coordinates do not match the declared pattern dimension."""


class ApplicabilityError(RateDistortionError):
    """A distortion was applied to patterns it is not defined for."""


class InputError(RateDistortionError):
    """Malformed numeric input (non-square, non-finite, mixed dimension)."""


class DomainError(RateDistortionError):
    """A bound formula was evaluated outside its validity range."""


class NumericDomainError(RateDistortionError):
    """A guarded numeric evaluation failed; carries the evaluation point."""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        self.context = dict(context or {})
        if self.context:
            details = ", ".join(f"{key}={value!r}" for key, value in self.context.items())
            message = f"{message} ({details})"
        super().__init__(message)


class ConfigError(RateDistortionError):
    """Invalid run configuration or parameter record."""


class SizeError(RateDistortionError):
    """Instance too large for an exhaustive algorithm."""


class PreconditionError(RateDistortionError):
    """A documented precondition of a bound construction is violated."""


class EmptyCodebookError(RateDistortionError):
    """Encoding was requested against a codebook without codewords."""
