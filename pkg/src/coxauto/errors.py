"""Exceptions shared across the package."""


class CoxAutoError(Exception):
    """Base class for all package-specific errors."""


class InvalidLabel(CoxAutoError, ValueError):
    """A Coxeter matrix entry or edge label is out of range."""


class InvalidGroupSpec(CoxAutoError, ValueError):
    """A group description (preset name or matrix block) failed to parse."""


class OutOfField(CoxAutoError, ValueError):
    """cos(pi/m) was requested for an m that does not divide the field's N."""


class ShadowViolation(CoxAutoError, RuntimeError):
    """A set claimed to be a Garside shadow failed a structural property."""


class BudgetExceeded(CoxAutoError, RuntimeError):
    """An enumeration outgrew its configured element budget."""


class CapIndeterminate(CoxAutoError, RuntimeError):
    """A join/closure question could not be settled within the length cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class UnsupportedRank(CoxAutoError, ValueError):
    """An operation restricted to a specific rank was called outside it."""


class InternalInvariant(CoxAutoError, RuntimeError):
    """An internal consistency check failed; indicates a bug."""
