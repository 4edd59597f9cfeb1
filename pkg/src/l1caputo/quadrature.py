"""Adaptive Gauss-Legendre quadrature with endpoint-singularity handling.

Two mechanisms cover every singular integral in the package:

* ``kernel_integral`` removes an algebraic kernel ``(b - s)**e`` at the right
  endpoint by the substitution ``s = b - v**(1/(1+e))``, which turns the
  kernel times the Jacobian into the constant ``1/(1+e)``;
* ``graded`` integrates toward an endpoint where the integrand itself is
  singular on geometrically shrinking panels and extrapolates the geometric
  tail of the panel contributions.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .errors import ConvergenceError, DivergenceError, ParameterError

__all__ = ["QuadratureSettings", "QuadResult", "gauss_legendre", "adaptive", "graded", "kernel_integral"]

_EPS = np.finfo(float).eps
_MAX_PANELS = 20000
# panel ratios this close to 1 mean the contributions no longer shrink
_DIVERGENCE_RATIO = 1.0 - 1e-6


@dataclass(frozen=True)
class QuadratureSettings:
    rtol: float = 1e-10
    max_depth: int = 80
    nodes: int = 16
    atol: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.rtol <= 1e-4:
            raise ParameterError(f"quadrature rtol must lie in (0, 1e-4], got {self.rtol!r}")
        if int(self.max_depth) != self.max_depth or self.max_depth < 1:
            raise ParameterError(f"max_depth must be an integer >= 1, got {self.max_depth!r}")
        if int(self.nodes) != self.nodes or self.nodes < 2:
            raise ParameterError(f"nodes per panel must be an integer >= 2, got {self.nodes!r}")

    def doubled(self) -> "QuadratureSettings":
        """Same tolerance with twice the nodes per panel (self-convergence checks)."""
        return replace(self, nodes=2 * self.nodes)


DEFAULT_SETTINGS = QuadratureSettings()


class QuadResult(NamedTuple):
    value: float
    error: float


@lru_cache(maxsize=16)
def _rule(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def gauss_legendre(g: Callable, a: float, b: float, n: int = 16) -> float:
    """Fixed n-point Gauss-Legendre rule on [a, b]; ``g`` must be vectorised."""
    x, w = _rule(n)
    half = 0.5 * (b - a)
    return float(half * np.dot(w, g(0.5 * (a + b) + half * x)))


def _panel(g, lo, hi, x, w):
    half = 0.5 * (hi - lo)
    vals = np.asarray(g(0.5 * (lo + hi) + half * x), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ConvergenceError(f"integrand is not finite on [{lo!r}, {hi!r}]")
    return half * float(np.dot(w, vals)), abs(half) * float(np.dot(w, np.abs(vals)))


def adaptive(g: Callable, a: float, b: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> QuadResult:
    """Globally adaptive bisection: always split the panel with the largest error."""
    if a == b:
        return QuadResult(0.0, 0.0)
    x, w = _rule(settings.nodes)

    def split(lo, hi, whole, depth):
        mid = 0.5 * (lo + hi)
        left, lmass = _panel(g, lo, mid, x, w)
        right, rmass = _panel(g, mid, hi, x, w)
        est = left + right
        err = abs(whole - est)
        # below the roundoff floor further splitting cannot help
        if err <= 50 * _EPS * (lmass + rmass) or mid in (lo, hi):
            err = 0.0 if mid not in (lo, hi) else err
            return [(0.0, lo, hi, est, err, depth, left, right, True)]
        return [(-err, lo, hi, est, err, depth, left, right, False)]

    whole, _ = _panel(g, a, b, x, w)
    heap = split(a, b, whole, 0)
    done: list = []
    while True:
        total = sum(p[3] for p in heap) + sum(p[3] for p in done)
        total_err = sum(p[4] for p in heap) + sum(p[4] for p in done)
        if total_err <= max(settings.rtol * abs(total), settings.atol):
            return QuadResult(total, total_err)
        if not heap:
            break
        item = heapq.heappop(heap)
        _, lo, hi, est, err, depth, left, right, final = item
        if final or depth >= settings.max_depth:
            done.append(item)
            continue
        if len(heap) + len(done) > _MAX_PANELS:
            done.append(item)
            break
        mid = 0.5 * (lo + hi)
        for child in split(lo, mid, left, depth + 1) + split(mid, hi, right, depth + 1):
            heapq.heappush(heap, child)
    total = sum(p[3] for p in heap) + sum(p[3] for p in done)
    total_err = sum(p[4] for p in heap) + sum(p[4] for p in done)
    raise ConvergenceError(
        f"adaptive quadrature on [{a!r}, {b!r}] stalled at error {total_err:.3e}", total, total_err
    )


def graded(
    g: Callable,
    a: float,
    b: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    toward: str = "left",
) -> QuadResult:
    """Integrate ``g`` on [a, b] with panels halving in width toward one endpoint.

    Panel k spans a distance ``h/2**(k+1) .. h/2**k`` from the singular end.
    The unresolved remainder is estimated from the ratio of the last two panel
    contributions, which is exact for a pure power singularity. Ratios at or
    above one signal a non-integrable singularity.
    """
    if toward not in ("left", "right"):
        raise ParameterError("toward must be 'left' or 'right'")
    h = b - a
    if h == 0:
        return QuadResult(0.0, 0.0)
    inner = QuadratureSettings(rtol=max(settings.rtol * 0.1, 1e-15), max_depth=settings.max_depth, nodes=settings.nodes)
    partial = 0.0
    panel_err = 0.0
    prev_c = None
    prev_total = None
    near_one = 0
    for k in range(settings.max_depth):
        far, near = h / 2.0**k, h / 2.0 ** (k + 1)
        if toward == "left":
            lo, hi = a + near, a + far
            collapsed = lo == a
        else:
            lo, hi = b - far, b - near
            collapsed = hi == b
        if collapsed:
            break
        c, e = adaptive(g, lo, hi, inner)
        partial += c
        panel_err += e
        if not math.isfinite(partial):
            raise DivergenceError(f"integral toward {toward} endpoint is not finite")
        tail = 0.0
        if prev_c is not None and prev_c != 0.0:
            r = c / prev_c
            if r >= _DIVERGENCE_RATIO:
                near_one += 1
                if near_one >= 3:
                    raise DivergenceError(
                        f"integral diverges at the {toward} endpoint of [{a!r}, {b!r}] "
                        f"(panel ratio {r:.6f})",
                        partial,
                    )
                tail = math.inf
            else:
                near_one = 0
                if r > 0.0:
                    tail = c * r / (1.0 - r)
        total = partial + tail
        if prev_total is not None and math.isfinite(total) and math.isfinite(prev_total):
            change = abs(total - prev_total)
            if change <= max(settings.rtol * abs(total), settings.atol) and k >= 2:
                return QuadResult(total, change + panel_err)
        prev_c, prev_total = c, total
    if prev_total is not None and math.isfinite(prev_total):
        estimate = prev_total
    else:
        estimate = partial
    bound = abs(estimate - partial) + panel_err
    if bound <= max(settings.rtol * abs(estimate), settings.atol):
        return QuadResult(estimate, bound)
    raise ConvergenceError(
        f"graded quadrature toward the {toward} endpoint did not converge", estimate, bound
    )


def kernel_integral(
    g: Callable,
    a: float,
    b: float,
    exponent: float,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
) -> QuadResult:
    """``int_a^b (b - s)**exponent * g(s) ds`` for ``exponent > -1``.

    The left half is graded toward ``a`` (where ``g`` may be singular); the
    right half uses the power substitution that absorbs the kernel.
    """
    if not exponent > -1.0:
        raise ParameterError(f"kernel exponent must exceed -1, got {exponent!r}")
    if not b > a:
        raise ParameterError("kernel_integral needs b > a")
    mid = a + 0.5 * (b - a)
    left = graded(lambda s: (b - s) ** exponent * g(s), a, mid, settings, toward="left")
    m = 1.0 / (1.0 + exponent)
    upper = (b - mid) ** (1.0 + exponent)
    right = adaptive(lambda v: m * g(b - v**m), 0.0, upper, settings)
    return QuadResult(left.value + right.value, left.error + right.error)
