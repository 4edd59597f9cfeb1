"""The L1 discretisation of the Caputo derivative on a uniform grid."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import DomainError, ParameterError
from .grids import UniformGrid, check_alpha

__all__ = [
    "L1Coefficients",
    "DiscreteDerivative",
    "l1_coefficients",
    "l1_scale",
    "l1_apply",
    "l1_apply_single",
    "l1_apply_integrated",
]


@lru_cache(maxsize=64)
def _coefficients(alpha: float, count: int) -> np.ndarray:
    k = np.arange(count + 1, dtype=float) ** (1.0 - alpha)
    b = k[1:] - k[:-1]
    b.flags.writeable = False
    return b


@dataclass(frozen=True)
class L1Coefficients:
    """``b_i = (i+1)**(1-alpha) - i**(1-alpha)`` for ``i = 0..count-1``."""

    alpha: float
    b: np.ndarray

    def __len__(self):
        return len(self.b)

    def __getitem__(self, i):
        return self.b[i]


@dataclass(frozen=True)
class DiscreteDerivative:
    """Values of the L1 derivative at nodes 1..N (node 0 has no value)."""

    grid: UniformGrid
    values: np.ndarray

    def at(self, n: int) -> float:
        if not 1 <= n <= self.grid.N:
            raise DomainError(f"discrete derivative is defined for n = 1..{self.grid.N}, got {n}")
        return float(self.values[n - 1])

    def __len__(self):
        return len(self.values)


def l1_coefficients(alpha, count: int) -> L1Coefficients:
    alpha = check_alpha(alpha)
    if int(count) != count or count < 1:
        raise ParameterError(f"count must be a positive integer, got {count!r}")
    return L1Coefficients(alpha, _coefficients(alpha, int(count)))


def l1_scale(alpha: float, tau: float) -> float:
    """Prefactor ``tau**(-alpha) / Gamma(2 - alpha)``."""
    return tau ** (-alpha) / math.gamma(2.0 - alpha)


def _samples(grid: UniformGrid, samples) -> np.ndarray:
    """Validated samples shifted by y(t_0).

    The operator annihilates constants; removing y(t_0) makes that exact in
    floating point and keeps roundoff proportional to the variation of y.
    """
    y = np.asarray(samples, dtype=float)
    if y.shape != (grid.N + 1,):
        raise ParameterError(f"expected {grid.N + 1} samples y(t_0..t_N), got shape {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ParameterError("samples must be finite")
    return np.ascontiguousarray(y - y[0])


def l1_apply(alpha, grid: UniformGrid, samples) -> DiscreteDerivative:
    """L1 approximation of the Caputo derivative at every node ``t_1..t_N``."""
    alpha = check_alpha(alpha)
    y = _samples(grid, samples)
    b = _coefficients(alpha, grid.N)
    history = kernels.l1_history(b, y)
    return DiscreteDerivative(grid, l1_scale(alpha, grid.tau) * (y[1:] - history))


def l1_apply_single(alpha, grid: UniformGrid, samples, n: int) -> float:
    alpha = check_alpha(alpha)
    if not 1 <= n <= grid.N:
        raise DomainError(f"node index must satisfy 1 <= n <= {grid.N}, got {n}")
    y = _samples(grid, samples)
    b = _coefficients(alpha, grid.N)
    return l1_scale(alpha, grid.tau) * (y[n] - kernels.l1_history_at(b, y, int(n)))


def l1_apply_integrated(alpha, grid: UniformGrid, samples) -> DiscreteDerivative:
    """Same operator, assembled as sum_j u_j * int_{t_j}^{t_{j+1}} (t_n - s)^(-alpha) ds / Gamma(1-alpha).

    ``u_j`` is the forward difference quotient on step j. This route does not
    touch the ``b_i`` coefficients and serves as an independent cross-check.
    """
    alpha = check_alpha(alpha)
    y = _samples(grid, samples)
    t = grid.nodes
    u = np.diff(y) / grid.tau
    out = np.empty(grid.N)
    for n in range(1, grid.N + 1):
        lo = (t[n] - t[:n]) ** (1.0 - alpha)
        hi = (t[n] - t[1 : n + 1]) ** (1.0 - alpha)
        out[n - 1] = np.dot(u[:n], (lo - hi)) / (1.0 - alpha)
    return DiscreteDerivative(grid, out / math.gamma(1.0 - alpha))
