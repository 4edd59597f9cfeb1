"""Weight families, weighted norms, interval factors W_j, the grid factor Lambda
and a dyadic estimate of the Muckenhoupt A_p characteristic."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergenceError, DomainError, ParameterError
from .grids import UniformGrid
from .profiles import TestFunction
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, _rule, adaptive, graded, kernel_integral

__all__ = [
    "LebesgueExponent",
    "WeightSpec",
    "ConstantOne",
    "PowerWeight",
    "JacobiWeight",
    "LogInverseWeight",
    "InadmissibleWeight",
    "IntervalFactor",
    "LambdaShape",
    "weight_eval",
    "wj_factor",
    "wj_factors",
    "lambda_numeric",
    "lambda_closed_form",
    "weighted_lp_norm",
    "weighted_sobolev_norm",
    "ap_characteristic",
]


class InadmissibleWeight(DivergenceError, ParameterError):
    """The weight's dual power is not integrable for this exponent p."""


@dataclass(frozen=True)
class LebesgueExponent:
    p: float

    def __post_init__(self):
        p = float(self.p)
        if not (1.0 < p < math.inf):
            raise ParameterError(f"p must satisfy 1 < p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)


def _exponent(p) -> LebesgueExponent:
    return p if isinstance(p, LebesgueExponent) else LebesgueExponent(p)


class WeightSpec:
    """A weight omega on (0, T).

    ``factors(p)`` splits the dual weight ``omega**(-1/(p-1))`` as
    ``s**(-cl) * (T - s)**(-cr) * smooth(s)`` so singular endpoints can be
    integrated with the substitution kernel.
    """

    T: float | None = None
    singular_left = False
    singular_right = False

    def __call__(self, t):
        raise NotImplementedError

    def dual(self, t, p: float):
        return self.factors(p)[2](t) * _endpoint_powers(t, self.T, *self.factors(p)[:2])

    def factors(self, p: float) -> tuple[float, float, Callable]:
        raise NotImplementedError

    def check_admissible(self, p: float) -> None:
        pass


def _endpoint_powers(t, T, cl, cr):
    t = np.asarray(t, dtype=float)
    out = np.ones_like(t)
    if cl:
        out = out * t ** (-cl)
    if cr:
        out = out * (T - t) ** (-cr)
    return out


def _one(t):
    return np.ones_like(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class ConstantOne(WeightSpec):
    def __call__(self, t):
        return _one(t)

    def factors(self, p):
        return 0.0, 0.0, _one


@dataclass(frozen=True)
class PowerWeight(WeightSpec):
    """omega(t) = t**mu."""

    mu: float

    def __post_init__(self):
        if not self.mu >= 0:
            raise ParameterError(f"mu must be >= 0, got {self.mu!r}")

    @property
    def singular_left(self):
        return self.mu > 0

    def __call__(self, t):
        return np.asarray(t, dtype=float) ** self.mu

    def factors(self, p):
        return self.mu / (p - 1.0), 0.0, _one

    def check_admissible(self, p):
        if not self.mu < p - 1.0:
            raise InadmissibleWeight(f"mu must satisfy mu < p-1 (mu={self.mu}, p={p})")


@dataclass(frozen=True)
class JacobiWeight(WeightSpec):
    """omega(t) = t**mu * (T - t)**gamma."""

    mu: float
    gamma: float
    T: float = 1.0

    def __post_init__(self):
        if not (self.mu >= 0 and self.gamma >= 0 and self.T > 0):
            raise ParameterError("JacobiWeight needs mu >= 0, gamma >= 0 and T > 0")

    @property
    def singular_left(self):
        return self.mu > 0

    @property
    def singular_right(self):
        return self.gamma > 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return t**self.mu * (self.T - t) ** self.gamma

    def factors(self, p):
        return self.mu / (p - 1.0), self.gamma / (p - 1.0), _one

    def check_admissible(self, p):
        if not self.mu < p - 1.0:
            raise InadmissibleWeight(f"mu must satisfy mu < p-1 (mu={self.mu}, p={p})")
        if not self.gamma < p - 1.0:
            raise InadmissibleWeight(f"gamma must satisfy gamma < p-1 (gamma={self.gamma}, p={p})")


@dataclass(frozen=True)
class LogInverseWeight(WeightSpec):
    """omega(t) = ln(e T / t)**(-mu)."""

    mu: float
    T: float = 1.0

    def __post_init__(self):
        if not (self.mu > 0 and self.T > 0):
            raise ParameterError("LogInverseWeight needs mu > 0 and T > 0")

    singular_left = True

    def _log(self, t):
        return 1.0 + math.log(self.T) - np.log(np.asarray(t, dtype=float))

    def __call__(self, t):
        return self._log(t) ** (-self.mu)

    def factors(self, p):
        power = self.mu / (p - 1.0)
        return 0.0, 0.0, lambda t: self._log(t) ** power


def weight_eval(w: WeightSpec, t: float) -> float:
    """omega(t) with the endpoint and domain checks applied."""
    if t < 0 or (w.T is not None and t > w.T):
        raise DomainError(f"t={t!r} lies outside the weight's domain")
    if (t == 0 and w.singular_left) or (w.T is not None and t == w.T and w.singular_right):
        raise DomainError(f"weight is singular at t={t!r}")
    return float(w(t))


@dataclass(frozen=True)
class IntervalFactor:
    j: int
    value: float


@dataclass(frozen=True)
class LambdaShape:
    """Grid factor Lambda, or its rate shape with unit constant when only a bound is known."""

    value: float
    rate_exponent: float
    log_power: float = 0.0
    exact: bool = True


def _dual_integral(w: WeightSpec, p: float, lo: float, hi: float, T: float, settings) -> float:
    """int_lo^hi omega**(-1/(p-1)) with the endpoint singularities removed."""
    cl, cr, smooth = w.factors(p)
    if lo == 0.0 and hi == T and (cl or cr or w.singular_left):
        mid = 0.5 * T
        return _dual_integral(w, p, lo, mid, T, settings) + _dual_integral(w, p, mid, hi, T, settings)
    if lo == 0.0 and cl:
        # reflect u = hi - s so the power sits at the kernel end
        def rest(u):
            s = hi - u
            return smooth(s) * _endpoint_powers(s, T, 0.0, cr)

        return kernel_integral(rest, 0.0, hi, -cl, settings).value
    if hi == T and cr:
        return kernel_integral(lambda s: smooth(s) * _endpoint_powers(s, T, cl, 0.0), lo, hi, -cr, settings).value
    dual = lambda s: w.dual(s, p)  # noqa: E731
    if lo == 0.0 and w.singular_left:
        return graded(dual, lo, hi, settings).value
    return adaptive(dual, lo, hi, settings).value


def _fixed_rule_batch(h: Callable, lo: np.ndarray, hi: np.ndarray, n: int) -> np.ndarray:
    x, wts = _rule(n)
    half = 0.5 * (hi - lo)
    pts = (0.5 * (lo + hi))[:, None] + half[:, None] * x[None, :]
    return half * (h(pts) @ wts)


def _batch_integrals(h: Callable, lo: np.ndarray, hi: np.ndarray, settings) -> np.ndarray:
    """Integrate a smooth ``h`` on many disjoint intervals, with a per-interval
    accuracy check against a rule of twice the order."""
    if lo.size == 0:
        return np.zeros(0)
    coarse = _fixed_rule_batch(h, lo, hi, settings.nodes)
    fine = _fixed_rule_batch(h, lo, hi, 2 * settings.nodes)
    bad = np.abs(fine - coarse) > settings.rtol * np.abs(fine) + settings.atol
    for i in np.flatnonzero(bad):
        fine[i] = adaptive(h, float(lo[i]), float(hi[i]), settings).value
    return fine


def _horizon(w: WeightSpec, grid: UniformGrid | None = None, T: float | None = None) -> float:
    horizon = T if T is not None else (grid.T if grid is not None else w.T)
    if horizon is None:
        raise ParameterError("a horizon T is required for this weight")
    if w.T is not None and not math.isclose(w.T, horizon, rel_tol=1e-12):
        raise ParameterError(f"weight horizon {w.T} differs from T={horizon}")
    return float(horizon)


def wj_factor(
    w: WeightSpec,
    p,
    grid: UniformGrid,
    j: int,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    closed_form: bool = True,
) -> IntervalFactor:
    """W_j = (int_{t_j}^{t_{j+1}} omega**(-q/p))**(1/q).

    Closed forms are used for the constant weight and the power weight on the
    first interval unless ``closed_form`` is False.
    """
    ex = _exponent(p)
    w.check_admissible(ex.p)
    if not 0 <= j < grid.N:
        raise DomainError(f"interval index must satisfy 0 <= j < {grid.N}, got {j}")
    tau, q = grid.tau, ex.q
    if closed_form and isinstance(w, ConstantOne):
        return IntervalFactor(j, tau ** (1.0 / q))
    if closed_form and isinstance(w, PowerWeight) and j == 0:
        return IntervalFactor(j, (ex.p / (ex.p - w.mu * q)) ** (1.0 / q) * tau ** (1.0 / q - w.mu / ex.p))
    T = _horizon(w, grid)
    t = grid.nodes
    val = _dual_integral(w, ex.p, float(t[j]), float(t[j + 1]), T, settings)
    return IntervalFactor(j, val ** (1.0 / q))


def wj_factors(w: WeightSpec, p, grid: UniformGrid, settings: QuadratureSettings = DEFAULT_SETTINGS) -> np.ndarray:
    """All W_j, j = 0..N-1, by quadrature (no closed forms)."""
    ex = _exponent(p)
    w.check_admissible(ex.p)
    T = _horizon(w, grid)
    t = grid.nodes
    N = grid.N
    out = np.empty(N)
    ends = {0, N - 1}
    for j in ends:
        out[j] = _dual_integral(w, ex.p, float(t[j]), float(t[j + 1]), T, settings)
    if N > 2:
        out[1 : N - 1] = _batch_integrals(lambda s: w.dual(s, ex.p), t[1 : N - 1], t[2:N], settings)
    return out ** (1.0 / ex.q)


def lambda_numeric(w: WeightSpec, p, grid: UniformGrid, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """max_j tau**(-1/q) W_j, every W_j computed by quadrature."""
    ex = _exponent(p)
    return float(np.max(grid.tau ** (-1.0 / ex.q) * wj_factors(w, ex, grid, settings)))


def lambda_closed_form(w: WeightSpec, p, tau: float) -> LambdaShape:
    ex = _exponent(p)
    if isinstance(w, ConstantOne):
        return LambdaShape(1.0, 0.0)
    if isinstance(w, PowerWeight):
        w.check_admissible(ex.p)
        coef = (ex.p / (ex.p - w.mu * ex.q)) ** (1.0 / ex.q)
        return LambdaShape(coef * tau ** (-w.mu / ex.p), -w.mu / ex.p)
    if isinstance(w, JacobiWeight):
        w.check_admissible(ex.p)
        nu = max(w.mu, w.gamma)
        return LambdaShape(tau ** (-nu / ex.p), -nu / ex.p, exact=False)
    if isinstance(w, LogInverseWeight):
        power = w.mu / ex.p
        return LambdaShape(math.log(math.e * w.T / tau) ** power, 0.0, power, exact=False)
    raise ParameterError(f"no closed form for weight {w!r}")


def _weighted_integral(h: Callable, w: WeightSpec, T: float, settings, order: int | None = None) -> float:
    """int_0^T h(s) omega(s) ds, graded toward both endpoints."""
    g = lambda s: h(s) * w(s)  # noqa: E731
    mid = 0.5 * T
    try:
        left = graded(g, 0.0, mid, settings, toward="left").value
        right = graded(g, mid, T, settings, toward="right").value
    except DivergenceError as exc:
        exc.order = order
        raise
    return left + right


def _piecewise_linear_integral(nodes, values, w: WeightSpec, p: float, settings) -> float:
    breaks = [nodes]
    v0, v1 = values[:-1], values[1:]
    cross = (v0 * v1) < 0
    if np.any(cross):
        breaks.append(nodes[:-1][cross] + (nodes[1:] - nodes[:-1])[cross] * v0[cross] / (v0[cross] - v1[cross]))
    pts = np.unique(np.concatenate(breaks))
    h = lambda s: np.abs(np.interp(s, nodes, values)) ** p * w(s)  # noqa: E731
    total = graded(h, float(pts[0]), float(pts[1]), settings, toward="left").value
    if len(pts) > 2:
        total += graded(h, float(pts[-2]), float(pts[-1]), settings, toward="right").value
    if len(pts) > 3:
        total += float(np.sum(_batch_integrals(h, pts[1:-2], pts[2:-1], settings)))
    return total


def weighted_lp_norm(
    y,
    w: WeightSpec,
    p,
    T: float | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    grid: UniformGrid | None = None,
) -> float:
    """(int_0^T |y|**p omega)**(1/p) for a callable ``y`` or node samples on ``grid``.

    Samples are joined piecewise linearly.
    """
    ex = _exponent(p)
    if callable(y):
        horizon = _horizon(w, grid, T)
        val = _weighted_integral(lambda s: np.abs(y(s)) ** ex.p, w, horizon, settings)
    else:
        if grid is None:
            raise ParameterError("sampled input needs its grid")
        values = np.asarray(y, dtype=float)
        if values.shape != (grid.N + 1,):
            raise ParameterError(f"expected {grid.N + 1} samples, got shape {values.shape}")
        _horizon(w, grid, T)
        val = _piecewise_linear_integral(grid.nodes, values, w, ex.p, settings)
    return val ** (1.0 / ex.p)


def weighted_sobolev_norm(
    f: TestFunction,
    w: WeightSpec,
    p,
    s: int = 1,
    T: float | None = None,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """(int_0^T sum_{k<=s} |y^(k)|**p omega)**(1/p); raises DivergenceError with ``order`` set."""
    if s not in (1, 2):
        raise ParameterError(f"Sobolev order must be 1 or 2, got {s!r}")
    ex = _exponent(p)
    horizon = T if T is not None else (f.T if f.T is not None else w.T)
    if horizon is None:
        raise ParameterError("a horizon T is required")
    total = 0.0
    for k in range(s + 1):
        total += _weighted_integral(lambda t, k=k: np.abs(f._eval(np.asarray(t, dtype=float), k)) ** ex.p, w, horizon, settings, order=k)
    return total ** (1.0 / ex.p)


def ap_characteristic(
    w: WeightSpec,
    p,
    T: float | None = None,
    depth: int = 10,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> float:
    """Largest A_p product over the dyadic subintervals of (0, T) down to length T/2**depth.

    This is a lower bound of the characteristic. Returns ``inf`` when an
    average over an interval touching a singular endpoint diverges.
    """
    ex = _exponent(p)
    if int(depth) != depth or depth < 1:
        raise ParameterError(f"depth must be an integer >= 1, got {depth!r}")
    horizon = _horizon(w, None, T if T is not None else (w.T if w.T is not None else 1.0))
    if isinstance(w, ConstantOne):
        return 1.0
    power = 1.0 / (ex.p - 1.0)
    dual = lambda s: np.asarray(w(s), dtype=float) ** (-power)  # noqa: E731

    def edge_average(h, lo, hi):
        if lo == 0.0 and hi == horizon:
            mid = 0.5 * horizon
            val = graded(h, 0.0, mid, settings, "left").value + graded(h, mid, hi, settings, "right").value
        elif lo == 0.0:
            val = graded(h, lo, hi, settings, "left").value
        else:
            val = graded(h, lo, hi, settings, "right").value
        return val / (hi - lo)

    best = 0.0
    for level in range(int(depth) + 1):
        count = 2**level
        edges = horizon * (np.arange(count + 1) / count)
        lo, hi = edges[:-1], edges[1:]
        try:
            edge_vals = []
            for k in sorted({0, count - 1}):
                a = edge_average(w, float(lo[k]), float(hi[k]))
                b = edge_average(dual, float(lo[k]), float(hi[k]))
                edge_vals.append(a * b ** (ex.p - 1.0))
        except DivergenceError:
            return math.inf
        best = max(best, *edge_vals)
        if count > 2:
            width = hi[1:-1] - lo[1:-1]
            a = _batch_integrals(w, lo[1:-1], hi[1:-1], settings) / width
            b = _batch_integrals(dual, lo[1:-1], hi[1:-1], settings) / width
            best = max(best, float(np.max(a * b ** (ex.p - 1.0))))
    return best
