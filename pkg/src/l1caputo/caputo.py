"""Reference Caputo derivatives and Riemann-Liouville integrals."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, ParameterError
from .grids import check_alpha
from .profiles import Constant, Linear, PowerProfile, Quadratic, TestFunction
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, kernel_integral

__all__ = ["caputo_power", "caputo_quadrature", "rl_integral", "caputo_closed_form"]


def caputo_power(alpha, kappa: float, t):
    """Caputo derivative of ``t**kappa``: Gamma(k+1)/Gamma(k+1-alpha) * t**(k-alpha)."""
    alpha = check_alpha(alpha)
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    arr = np.asarray(t, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("caputo_power needs t > 0")
    coef = math.exp(math.lgamma(kappa + 1.0) - math.lgamma(kappa + 1.0 - alpha))
    out = coef * arr ** (kappa - alpha)
    return float(out) if out.ndim == 0 else out


def caputo_closed_form(alpha, f: TestFunction, t):
    """Exact Caputo derivative for profiles that have one, else ``None``."""
    alpha = check_alpha(alpha)
    t = np.asarray(t, dtype=float)
    if isinstance(f, PowerProfile):
        return caputo_power(alpha, f.kappa, t)
    if isinstance(f, Quadratic):
        return caputo_power(alpha, 2.0, t)
    if isinstance(f, Linear):
        return f.b * caputo_power(alpha, 1.0, t)
    if isinstance(f, Constant):
        return np.zeros_like(t) if t.ndim else 0.0
    return None


def caputo_quadrature(alpha, f: TestFunction, t: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Caputo derivative at ``t`` by singular quadrature of y'(s) (t - s)**(-alpha)."""
    alpha = check_alpha(alpha)
    if not t > 0:
        raise DomainError("caputo_quadrature needs t > 0")
    res = kernel_integral(lambda s: f(s, 1), 0.0, float(t), -alpha, settings)
    return res.value / math.gamma(1.0 - alpha)


def rl_integral(beta: float, g, t: float, settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Riemann-Liouville integral of order ``beta`` in (0, 1] of ``g`` at ``t``."""
    if not 0.0 < beta <= 1.0:
        raise ParameterError(f"beta must lie in (0, 1], got {beta!r}")
    if not t > 0:
        raise DomainError("rl_integral needs t > 0")

    def integrand(s):
        s = np.asarray(s, dtype=float)
        return np.broadcast_to(np.asarray(g(s), dtype=float), s.shape)

    res = kernel_integral(integrand, 0.0, float(t), beta - 1.0, settings)
    return res.value / math.gamma(beta)
