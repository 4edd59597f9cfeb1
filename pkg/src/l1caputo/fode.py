"""L1 time stepping for D^alpha y + lambda y = f, y(0) = y0."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .caputo import caputo_closed_form, caputo_power
from .errors import ParameterError
from .grids import UniformGrid, check_alpha
from .l1 import _coefficients, l1_apply, l1_scale
from .profiles import TestFunction

__all__ = [
    "FodeProblem",
    "FodeSolution",
    "ErrorReport",
    "ManufacturedPower",
    "solve_fode",
    "global_error",
    "measured_truncation",
    "gronwall_factor",
    "manufactured_problem",
]


@dataclass(frozen=True)
class FodeProblem:
    alpha: float
    lam: float
    source: Callable
    y0: float
    T: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        if not self.lam >= 0:
            raise ParameterError(f"lambda must be >= 0 for the stable scheme, got {self.lam!r}")
        if not self.T > 0:
            raise ParameterError(f"horizon T must be positive, got {self.T!r}")


@dataclass(frozen=True)
class FodeSolution:
    grid: UniformGrid
    Y: np.ndarray


@dataclass(frozen=True)
class ErrorReport:
    errors: np.ndarray  # e_n = y(t_n) - Y_n for n = 0..N
    max_error: float  # over n = 1..N
    gronwall_bound: float | None = None


def _sample_source(source: Callable, t: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(source(t), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != t.shape:
        vals = np.array([float(source(float(s))) for s in t])
    bad = np.flatnonzero(~np.isfinite(vals[1:]))
    if bad.size:
        n = int(bad[0]) + 1
        raise ParameterError(f"source is not finite at node n={n} (t={t[n]!r})")
    return vals


def solve_fode(problem: FodeProblem, grid: UniformGrid) -> FodeSolution:
    """March the implicit-but-scalar update Y_n = (f_n + c H_n) / (c + lambda)."""
    if not math.isclose(grid.T, problem.T, rel_tol=1e-12):
        raise ParameterError(f"grid horizon {grid.T} does not match problem horizon {problem.T}")
    y0, lam = float(problem.y0), float(problem.lam)
    f = _sample_source(problem.source, grid.nodes)
    b = _coefficients(problem.alpha, grid.N)
    scale = l1_scale(problem.alpha, grid.tau)
    # march Z = Y - y0, which solves the same equation with source f - lam*y0 and Z_0 = 0
    Z = kernels.fode_march(b, scale, lam, np.ascontiguousarray(f - lam * y0), 0.0)
    Y = np.asarray(Z) + y0
    Y[0] = y0
    return FodeSolution(grid, Y)


def gronwall_factor(alpha: float, T: float) -> float:
    return T**alpha / math.gamma(1.0 + alpha)


def measured_truncation(alpha, exact, grid: UniformGrid, caputo: Callable | None = None) -> np.ndarray:
    """R_n = D^alpha y(t_n) - delta y(t_n) for n = 1..N.

    ``caputo`` gives the exact derivative; profiles with a closed form may omit it.
    """
    t = grid.nodes
    ys = exact(t)
    truth = caputo(t[1:]) if caputo is not None else caputo_closed_form(alpha, exact, t[1:])
    if truth is None:
        raise ParameterError("no closed-form Caputo derivative for this profile; pass `caputo`")
    return np.asarray(truth) - l1_apply(alpha, grid, ys).values


def global_error(sol: FodeSolution, exact: Callable, truncation: np.ndarray | None = None, alpha: float | None = None) -> ErrorReport:
    """Per-node errors against ``exact``; the Gronwall bound needs ``truncation`` and ``alpha``."""
    errors = np.asarray(exact(sol.grid.nodes), dtype=float) - sol.Y
    max_error = float(np.max(np.abs(errors[1:])))
    bound = None
    if truncation is not None:
        if alpha is None:
            raise ParameterError("alpha is required for the Gronwall bound")
        bound = gronwall_factor(alpha, sol.grid.T) * float(np.max(np.abs(truncation)))
    return ErrorReport(errors, max_error, bound)


@dataclass(frozen=True)
class ManufacturedPower:
    """Exact solution y(t) = y0 + t**kappa with its Caputo derivative."""

    kappa: float
    y0: float = 0.0

    def __call__(self, t):
        return self.y0 + np.asarray(t, dtype=float) ** self.kappa

    def caputo(self, alpha, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 0
        out[pos] = caputo_power(alpha, self.kappa, t[pos])
        return out


def manufactured_problem(alpha, lam: float, exact: ManufacturedPower | TestFunction, T: float = 1.0, y0: float | None = None) -> FodeProblem:
    """Problem whose solution is ``exact``: f = D^alpha y + lambda y."""
    alpha = check_alpha(alpha)
    if isinstance(exact, ManufacturedPower):
        deriv = lambda t: exact.caputo(alpha, t)  # noqa: E731
        start = exact.y0
    else:
        if caputo_closed_form(alpha, exact, 1.0) is None:
            raise ParameterError("manufactured solutions need a profile with a closed-form Caputo derivative")

        def deriv(t):
            t = np.asarray(t, dtype=float)
            out = np.zeros_like(t)
            pos = t > 0
            out[pos] = caputo_closed_form(alpha, exact, t[pos])
            return out

        start = float(exact(0.0))
    return FodeProblem(alpha, lam, lambda t: deriv(t) + lam * exact(t), start if y0 is None else y0, T)
