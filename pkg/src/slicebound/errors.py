"""Shared exception types."""


class NonPrimeError(ValueError):
    """Raised when a modulus fails the primality check."""


class MismatchError(ValueError):
    """Raised when two operands disagree on modulus or dimension."""


class ZeroSumError(ValueError):
    """Raised when a triple violates the per-index zero-sum constraint."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, message: str, budget: int, estimate: int):
        super().__init__(message)
        self.budget = budget
        self.estimate = estimate


class UnsupportedSizeError(ValueError):
    """Raised when the brute-force rank oracle is asked for an unsupported instance."""
