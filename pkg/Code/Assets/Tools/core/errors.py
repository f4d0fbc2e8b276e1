"""Exception hierarchy shared by the numerical tools and the CLI.

Each concrete error also derives from the builtin it specializes, so callers that
only care about ``ValueError`` or ``RuntimeError`` keep working.
"""
from typing import Any, Optional


class HoeprError(Exception):
    """Base class for all library errors."""


class InvalidOrderError(HoeprError, ValueError):
    pass


class DomainError(HoeprError, ValueError):
    pass


class MemoryGuardError(HoeprError, ValueError):
    pass


class UnknownCriterionError(HoeprError, KeyError):
    pass


class NonConvergenceError(HoeprError, RuntimeError):
    """Solver gave up; ``best`` holds the last iterate (an EigenResult or optimizer result)."""

    def __init__(self, message: str, best: Optional[Any] = None) -> None:
        super().__init__(message)
        self.best = best


class TruncationTailError(HoeprError, RuntimeError):
    def __init__(self, message: str, tail_mass: float, K: int) -> None:
        super().__init__(message)
        self.tail_mass = tail_mass
        self.K = K


class UnphysicalCovarianceError(HoeprError, ValueError):
    def __init__(self, message: str, min_eigenvalue: float) -> None:
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue
