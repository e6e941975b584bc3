"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "MZVError",
    "DomainError",
    "CapacityError",
    "PoleError",
    "OracleError",
    "NearPoleError",
]


class MZVError(Exception):
    """Base class for all package errors."""


class DomainError(MZVError, ValueError):
    """A parameter violates the hypotheses under which a value is defined."""


class CapacityError(MZVError):
    """A computation would exceed the desk-scale limits."""


class PoleError(MZVError, ZeroDivisionError):
    """Evaluation point lies on a polar hyperplane."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class OracleError(MZVError):
    """The numerical oracle could not reach the requested tolerance."""


class NearPoleError(OracleError):
    """A linear factor in the reduction came within the singularity guard."""
