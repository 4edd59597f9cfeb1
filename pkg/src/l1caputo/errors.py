"""Exception hierarchy shared by the numerical modules and the CLI."""

from __future__ import annotations


class L1CaputoError(Exception):
    """Base class for all library errors."""


class ParameterError(L1CaputoError, ValueError):
    """An argument violates a stated constraint (mapped to CLI exit code 2)."""


class DomainError(L1CaputoError, ValueError):
    """A quantity was requested where it is undefined, e.g. a singular derivative."""


class ConvergenceError(L1CaputoError, ArithmeticError):
    """Quadrature did not reach its tolerance within the allowed refinement.

    The best available estimate and an error bound travel with the exception so
    callers can degrade gracefully instead of discarding the work.
    """

    def __init__(self, message: str, estimate: float = float("nan"), bound: float = float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.bound = bound


class DivergenceError(ConvergenceError):
    """The integral is not finite: refinement toward a singular endpoint stops shrinking."""

    def __init__(self, message: str, estimate: float = float("inf"), bound: float = float("inf"), order: int | None = None):
        super().__init__(message, estimate, bound)
        self.order = order
