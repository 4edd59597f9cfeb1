"""Uniform time grids and fractional orders."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ParameterError

__all__ = ["FractionalOrder", "UniformGrid", "make_grid", "refine", "check_alpha"]


def check_alpha(alpha) -> float:
    """Return ``alpha`` as a float after checking ``0 < alpha < 1``."""
    value = float(alpha)
    if not 0.0 < value < 1.0:
        raise ParameterError(f"alpha must satisfy 0 < alpha < 1, got {value!r}")
    return value


@dataclass(frozen=True)
class FractionalOrder:
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))

    def __float__(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class UniformGrid:
    """Grid ``t_n = n T / N`` for ``n = 0..N``.

    Nodes are computed as ``T * (n / N)`` so that refining by an integer factor
    reproduces every coarse node bit-for-bit at fine index ``n * factor``.
    """

    T: float
    N: int

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise ParameterError(f"horizon T must be positive, got {self.T!r}")
        if int(self.N) != self.N or self.N < 1:
            raise ParameterError(f"step count N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "N", int(self.N))

    @property
    def tau(self) -> float:
        return self.T / self.N

    @cached_property
    def nodes(self) -> np.ndarray:
        t = self.T * (np.arange(self.N + 1) / self.N)
        t.flags.writeable = False
        return t

    def node(self, n: int) -> float:
        return float(self.nodes[n])


def make_grid(T: float, N: int) -> UniformGrid:
    return UniformGrid(T, N)


def refine(grid: UniformGrid, factor: int) -> UniformGrid:
    """Split every step of ``grid`` into ``factor`` equal steps."""
    if int(factor) != factor or factor < 2:
        raise ParameterError(f"refinement factor must be an integer >= 2, got {factor!r}")
    return UniformGrid(grid.T, grid.N * int(factor))
