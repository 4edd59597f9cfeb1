"""Convergence-order experiments: extrapolated orders, truncation studies and
reproduction of the published tables."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from . import tables
from .caputo import caputo_closed_form, caputo_quadrature
from .errors import DivergenceError, ParameterError
from .grids import UniformGrid, check_alpha, make_grid, refine
from .l1 import l1_apply
from .profiles import JacobiProfile, LogProfile, PowerProfile, TestFunction
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, graded
from .weights import (
    ConstantOne,
    JacobiWeight,
    LogInverseWeight,
    PowerWeight,
    WeightSpec,
    _batch_integrals,
    _exponent,
    weighted_lp_norm,
    wj_factors,
)

__all__ = [
    "OrderEstimate",
    "TableRow",
    "TruncationBreakdown",
    "TruncationStudy",
    "power_profile",
    "jacobi_profile",
    "log_profile",
    "estimate_order",
    "log_adjusted_order",
    "theoretical_order",
    "truncation_study",
    "reproduce_table",
    "format_rows",
]

# differences below this fraction of the derivative scale are roundoff
EXACTNESS_RTOL = 1e-11
OFFSET = 0.001


def power_profile(p: float, mu: float, offset: float = OFFSET) -> PowerProfile:
    """t**kappa with kappa = 2 - (1+mu)/p + offset, the table-1 test function."""
    return PowerProfile(2.0 - (1.0 + mu) / p + offset)


def jacobi_profile(p: float, mu: float, gamma: float, T: float = 1.0, offset: float = OFFSET) -> JacobiProfile:
    return JacobiProfile(2.0 - (1.0 + mu) / p + offset, 2.0 - (1.0 + gamma) / p + offset, T)


def log_profile(p: float, mu: float, T: float = 1.0, offset: float = OFFSET) -> LogProfile:
    return LogProfile(2.0 - 1.0 / p, (mu - 1.0) / p - offset, T)


@dataclass(frozen=True)
class OrderEstimate:
    base_tau: float
    d1: float
    d2: float
    exact: bool = False
    theoretical: float | None = None
    log_factor: float | None = None

    @property
    def order(self) -> float | None:
        """log2(d1/d2); None when the scheme is exact on the profile."""
        if self.exact:
            return None
        return math.log2(self.d1 / self.d2)

    @property
    def log_adjusted(self) -> float | None:
        if self.exact or self.log_factor is None:
            return None
        return math.log2(self.d1 / self.d2 * self.log_factor)


def _check_base(base_N: int) -> int:
    if int(base_N) != base_N or base_N < 8 or int(base_N) & (int(base_N) - 1):
        raise ParameterError(f"base_N must be a power of two >= 8, got {base_N!r}")
    return int(base_N)


def estimate_order(alpha, f: TestFunction, T: float = 1.0, base_N: int = 1024) -> OrderEstimate:
    """Extrapolated order from the L1 derivatives on steps tau, tau/2, tau/4.

    Differences are taken on the coarser grid of each pair through exact index
    nesting: coarse node n is fine node 2n.
    """
    alpha = check_alpha(alpha)
    coarse = make_grid(T, _check_base(base_N))
    grids = [coarse, refine(coarse, 2), refine(coarse, 4)]
    deltas = [l1_apply(alpha, g, f(g.nodes)).values for g in grids]
    d1 = float(np.max(np.abs(deltas[0] - deltas[1][1::2])))
    d2 = float(np.max(np.abs(deltas[1] - deltas[2][1::2])))
    scale = float(np.max(np.abs(deltas[2])))
    exact = d2 <= EXACTNESS_RTOL * scale or d1 <= EXACTNESS_RTOL * scale or scale == 0.0
    return OrderEstimate(coarse.tau, d1, d2, exact)


def log_adjusted_order(alpha, f: TestFunction, T: float, base_N: int, mu: float, p: float) -> OrderEstimate:
    """As estimate_order, with the ratio scaled by [ln(2eT/tau)/ln(eT/tau)]**(mu/p), tau the coarsest step."""
    est = estimate_order(alpha, f, T, base_N)
    tau = est.base_tau
    factor = (math.log(2.0 * math.e * T / tau) / math.log(math.e * T / tau)) ** (mu / p)
    return OrderEstimate(est.base_tau, est.d1, est.d2, est.exact, est.theoretical, factor)


def theoretical_order(weight: WeightSpec, p, alpha) -> float:
    alpha = check_alpha(alpha)
    ex = _exponent(p)
    weight.check_admissible(ex.p)
    if isinstance(weight, PowerWeight):
        return 2.0 - alpha - (1.0 + weight.mu) / ex.p
    if isinstance(weight, JacobiWeight):
        return 2.0 - alpha - (1.0 + max(weight.mu, weight.gamma)) / ex.p
    if isinstance(weight, (LogInverseWeight, ConstantOne)):
        return 2.0 - alpha - 1.0 / ex.p
    raise ParameterError(f"no theoretical order for weight {weight!r}")


@dataclass(frozen=True)
class TruncationBreakdown:
    N: int
    tau: float
    R: np.ndarray  # |D^alpha y(t_n) - delta y(t_n)|, n = 1..N
    Y: np.ndarray  # int |y''| over each step
    W: np.ndarray  # W_j
    Lambda: float
    seminorm: float  # ||y''|| in L^p_omega
    bound: float  # tau**(2-alpha-1/p) * Lambda * seminorm

    @property
    def max_R(self) -> float:
        return float(np.max(self.R))


@dataclass(frozen=True)
class TruncationStudy:
    breakdowns: list[TruncationBreakdown]
    slope: float
    bound_slope: float | None = None
    taus: np.ndarray = field(default=None, repr=False)


def _exact_caputo(alpha, f, t, settings):
    closed = caputo_closed_form(alpha, f, t)
    if closed is not None:
        return np.asarray(closed)
    return np.array([caputo_quadrature(alpha, f, float(s), settings) for s in t])


def _second_derivative_mass(f: TestFunction, grid: UniformGrid, settings) -> np.ndarray:
    t = grid.nodes
    h = lambda s: np.abs(f._eval(np.asarray(s, dtype=float), 2))  # noqa: E731
    out = np.empty(grid.N)
    for j, toward in ((0, "left"), (grid.N - 1, "right")):
        try:
            out[j] = graded(h, float(t[j]), float(t[j + 1]), settings, toward).value
        except DivergenceError:
            out[j] = math.inf
    if grid.N > 2:
        out[1:-1] = _batch_integrals(h, t[1:-2], t[2:-1], settings)
    return out


def truncation_study(
    alpha,
    f: TestFunction,
    weight: WeightSpec,
    p,
    grids,
    T: float = 1.0,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> TruncationStudy:
    """Measured max truncation error per grid, its log-log slope, and the bound curve."""
    alpha = check_alpha(alpha)
    ex = _exponent(p)
    weight.check_admissible(ex.p)
    try:
        seminorm = weighted_lp_norm(lambda s: f._eval(np.asarray(s, dtype=float), 2), weight, ex, T, settings)
    except DivergenceError:
        seminorm = math.inf
    out = []
    for N in grids:
        grid = make_grid(T, int(N))
        t = grid.nodes
        delta = l1_apply(alpha, grid, f(t)).values
        R = np.abs(_exact_caputo(alpha, f, t[1:], settings) - delta)
        W = wj_factors(weight, ex, grid, settings)
        lam = float(np.max(grid.tau ** (-1.0 / ex.q) * W))
        Y = _second_derivative_mass(f, grid, settings)
        bound = grid.tau ** (2.0 - alpha - 1.0 / ex.p) * lam * seminorm
        out.append(TruncationBreakdown(grid.N, grid.tau, R, Y, W, lam, seminorm, bound))
    taus = np.array([b.tau for b in out])
    slope = float(np.polyfit(np.log(taus), np.log([b.max_R for b in out]), 1)[0])
    bounds = np.array([b.bound for b in out])
    bound_slope = None
    if np.all(np.isfinite(bounds)) and np.all(bounds > 0):
        bound_slope = float(np.polyfit(np.log(taus), np.log(bounds), 1)[0])
    return TruncationStudy(out, slope, bound_slope, taus)


@dataclass(frozen=True)
class TableRow:
    table: int
    params: dict  # column name -> printed string, in table order
    estimated: float | None
    theoretical: float
    published: float | None = None
    d1: float = math.nan
    d2: float = math.nan
    adjust_tau: float | None = None


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _row(table_id: int, entry, T: float, base_N: int) -> TableRow:
    alpha = float(entry[0])
    published = entry[-2]
    if table_id == 1:
        a, p, mu = entry[0], entry[1], entry[2]
        prof = power_profile(float(p), float(mu))
        weight = PowerWeight(float(mu))
        params = {"alpha": a, "p": p, "mu": mu, "kappa": _fmt(prof.kappa)}
    elif table_id == 2:
        a, p, mu, gamma = entry[:4]
        prof = jacobi_profile(float(p), float(mu), float(gamma), T)
        weight = JacobiWeight(float(mu), float(gamma), T)
        nu = max(mu, gamma, key=float)
        params = {"alpha": a, "p": p, "mu": mu, "gamma": gamma, "rho0": _fmt(prof.rho0), "rhoT": _fmt(prof.rhoT), "nu": nu}
    else:
        a, p, mu = entry[:3]
        prof = log_profile(float(p), float(mu), T)
        weight = LogInverseWeight(float(mu), T)
        params = {"alpha": a, "p": p, "mu": mu, "rho": _fmt(prof.rho), "theta": _fmt(prof.theta)}
    theory = theoretical_order(weight, float(p), alpha)
    if table_id == 4:
        est = log_adjusted_order(alpha, prof, T, base_N, float(mu), float(p))
        value = est.log_adjusted
        adjust_tau = est.base_tau
    else:
        est = estimate_order(alpha, prof, T, base_N)
        value = est.order
        adjust_tau = None
    return TableRow(table_id, params, value, theory, published, est.d1, est.d2, adjust_tau)


def reproduce_table(table_id: int, base_N: int = 1024, sink: TextIO | None = None, fmt: str = "csv", T: float = 1.0) -> list[TableRow]:
    """Run every row of a published table in its printed order."""
    if table_id not in tables.PUBLISHED:
        raise ParameterError(f"table id must be one of 1, 2, 3, 4, got {table_id!r}")
    _check_base(base_N)
    rows = [_row(table_id, entry, T, base_N) for entry in tables.PUBLISHED[table_id]]
    if sink is not None:
        sink.write(format_rows(rows, fmt))
    return rows


def format_rows(rows: list[TableRow], fmt: str = "csv", compare: bool = False) -> str:
    """CSV (LF line endings, '.' decimals) or aligned text."""
    if not rows:
        return ""
    header = list(rows[0].params) + ["estimated_order", "theoretical_order"]
    if compare:
        header += ["published_order", "difference"]
    if rows[0].adjust_tau is not None:
        header.append("adjust_tau")
    body = []
    for r in rows:
        line = list(r.params.values())
        line += ["exact" if r.estimated is None else _fmt(r.estimated), _fmt(r.theoretical)]
        if compare:
            diff = "" if r.estimated is None or r.published is None else f"{r.estimated - r.published:+.4f}"
            line += ["" if r.published is None else _fmt(r.published), diff]
        if r.adjust_tau is not None:
            line.append(repr(r.adjust_tau))
        body.append(line)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt == "text":
        widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(b, widths)) for b in body]
        if rows[0].adjust_tau is not None:
            lines.append(f"# log adjustment uses the coarsest step tau = {rows[0].adjust_tau!r}")
        return "\n".join(lines) + "\n"
    raise ParameterError(f"format must be 'csv' or 'text', got {fmt!r}")
