"""Analytic test profiles with exact first and second derivatives.

Every profile is vectorised: ``profile(t, order)`` accepts scalars or arrays.
At ``t = 0`` values are the continuous extension; derivatives that blow up
there raise :class:`DomainError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, ParameterError
from .grids import UniformGrid

__all__ = [
    "TestFunction",
    "PowerProfile",
    "JacobiProfile",
    "LogProfile",
    "Quadratic",
    "Linear",
    "Constant",
    "Sampled",
    "eval_function",
]


def _as_array(t):
    return np.asarray(t, dtype=float)


def _falling(x: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= x - i
    return out


def _power_derivative(t, kappa: float, order: int):
    """k-th derivative of t**kappa on t >= 0, zero-safe where it is finite."""
    c = _falling(kappa, order)
    if c == 0.0:
        return np.zeros_like(t)
    e = kappa - order
    with np.errstate(divide="ignore", invalid="ignore"):
        return c * np.power(t, e)


class TestFunction:
    """Base class of the profiles.

    Subclasses implement ``_eval(t, order)`` for ``t`` in the open domain and
    declare which derivative orders stay finite at the endpoints.
    """

    __test__ = False  # keep pytest from collecting this as a test class

    #: horizon of the profile, None when defined for all t >= 0
    T: float | None = None

    def __call__(self, t, order: int = 0):
        if order not in (0, 1, 2):
            raise ParameterError(f"derivative order must be 0, 1 or 2, got {order!r}")
        arr = _as_array(t)
        if np.any(arr < 0) or (self.T is not None and np.any(arr > self.T * (1 + 1e-15))):
            raise DomainError("t outside the profile domain")
        if np.any(arr == 0) and not self.finite_at_zero(order):
            raise DomainError(f"derivative of order {order} is singular at t = 0")
        if self.T is not None and np.any(arr == self.T) and not self.finite_at_horizon(order):
            raise DomainError(f"derivative of order {order} is singular at t = T")
        out = self._eval(arr, order)
        return float(out) if np.ndim(out) == 0 else out

    def finite_at_zero(self, order: int) -> bool:
        return True

    def finite_at_horizon(self, order: int) -> bool:
        return True

    def _eval(self, t: np.ndarray, order: int) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class PowerProfile(TestFunction):
    """y(t) = t**kappa."""

    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ParameterError(f"kappa must be positive, got {self.kappa!r}")

    def finite_at_zero(self, order):
        k = self.kappa
        return order == 0 or _falling(k, order) == 0.0 or k >= order

    def _eval(self, t, order):
        return _power_derivative(t, self.kappa, order)


@dataclass(frozen=True)
class JacobiProfile(TestFunction):
    """y(t) = t**rho0 + (T - t)**rhoT - T**rhoT, vanishing at t = 0."""

    rho0: float
    rhoT: float
    T: float = 1.0

    def __post_init__(self):
        if not (self.rho0 > 0 and self.rhoT > 0 and self.T > 0):
            raise ParameterError("JacobiProfile needs rho0 > 0, rhoT > 0 and T > 0")

    def finite_at_zero(self, order):
        k = self.rho0
        return order == 0 or _falling(k, order) == 0.0 or k >= order

    def finite_at_horizon(self, order):
        k = self.rhoT
        return order == 0 or _falling(k, order) == 0.0 or k >= order

    def _eval(self, t, order):
        s = np.maximum(self.T - t, 0.0)
        right = _power_derivative(s, self.rhoT, order) * (-1.0) ** order
        if order == 0:
            right = right - self.T**self.rhoT
        return _power_derivative(t, self.rho0, order) + right


@dataclass(frozen=True)
class LogProfile(TestFunction):
    """y(t) = t**rho * ln(e T / t)**theta, extended by 0 at t = 0."""

    rho: float
    theta: float
    T: float = 1.0

    def __post_init__(self):
        if not (self.rho > 0 and self.T > 0):
            raise ParameterError("LogProfile needs rho > 0 and T > 0")

    def finite_at_zero(self, order):
        return order == 0 or self.rho > order

    def _eval(self, t, order):
        rho, th = self.rho, self.theta
        out = np.zeros_like(t)
        pos = t > 0
        tp = t[pos]
        L = 1.0 + math.log(self.T) - np.log(tp)
        if order == 0:
            out[pos] = tp**rho * L**th
        elif order == 1:
            out[pos] = tp ** (rho - 1) * L ** (th - 1) * (rho * L - th)
        else:
            bracket = (rho - 1) * L * (rho * L - th) - (th - 1) * (rho * L - th) - rho * L
            out[pos] = tp ** (rho - 2) * L ** (th - 2) * bracket
        return out


@dataclass(frozen=True)
class Quadratic(TestFunction):
    """y(t) = t**2."""

    def _eval(self, t, order):
        return (t * t, 2.0 * t, np.full_like(t, 2.0))[order]


@dataclass(frozen=True)
class Linear(TestFunction):
    """y(t) = a + b t."""

    a: float = 0.0
    b: float = 1.0

    def _eval(self, t, order):
        return (self.a + self.b * t, np.full_like(t, self.b), np.zeros_like(t))[order]


@dataclass(frozen=True)
class Constant(TestFunction):
    c: float = 1.0

    def _eval(self, t, order):
        return np.full_like(t, self.c) if order == 0 else np.zeros_like(t)


@dataclass(frozen=True, eq=False)
class Sampled(TestFunction):
    """Node values on a grid, with an optional first-derivative evaluator.

    Values are only available on grid nodes; there is no interpolation.
    """

    grid: UniformGrid
    values: np.ndarray
    derivative: Callable | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.N + 1,):
            raise ParameterError(f"expected {self.grid.N + 1} samples, got {vals.shape}")
        object.__setattr__(self, "values", vals)

    @property
    def T(self):
        return self.grid.T

    def _eval(self, t, order):
        if order == 1 and self.derivative is not None:
            return _as_array(self.derivative(t))
        if order != 0:
            raise DomainError("Sampled profiles only provide derivatives through an evaluator")
        idx = np.rint(t / self.grid.tau).astype(int)
        idx = np.clip(idx, 0, self.grid.N)
        if not np.array_equal(self.grid.nodes[idx], t):
            raise DomainError("Sampled profile queried off the grid nodes; interpolation is not provided")
        return self.values[idx]


def eval_function(f: TestFunction, t, order: int = 0):
    """Evaluate ``f`` or one of its first two derivatives at ``t``."""
    return f(t, order)
