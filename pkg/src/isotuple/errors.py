"""Exception types shared across the package."""


class IsotupleError(Exception):
    """Base class for all package-specific errors."""


class InvalidArgumentError(IsotupleError, ValueError):
    """An argument violates a documented precondition."""


class SingularMatrixError(IsotupleError):
    """A matrix is numerically singular; carries a condition-number estimate."""

    def __init__(self, message: str, condition: float = float("inf")):
        super().__init__(message)
        self.condition = condition


class CoefficientOverflowError(IsotupleError, OverflowError):
    """An exact integer coefficient left the documented safe range."""


class BudgetExceededError(IsotupleError):
    """An enumeration would exceed the documented size budget."""


class GenerationFailureError(IsotupleError):
    """A randomized generator exhausted its retry budget."""
