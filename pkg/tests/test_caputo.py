import math
import zlib

import mpmath as mp
import numpy as np
import pytest

from l1caputo import (
    Constant,
    ConvergenceError,
    DomainError,
    JacobiProfile,
    Linear,
    LogProfile,
    ParameterError,
    PowerProfile,
    QuadratureSettings,
    Quadratic,
    caputo_closed_form,
    caputo_power,
    caputo_quadrature,
    rl_integral,
)

ANALYTIC = [
    PowerProfile(0.5),
    PowerProfile(1.334),
    PowerProfile(2.0),
    JacobiProfile(1.268, 1.534),
    JacobiProfile(1.134, 1.868),
    LogProfile(1.333, -0.334),
    LogProfile(1.667, 0.332),
    Quadratic(),
    Linear(1.0, 2.0),
]


def test_power_rule_examples():
    assert caputo_power(0.5, 1.0, 1.0) == pytest.approx(1 / math.gamma(1.5), rel=1e-15)
    assert caputo_power(0.5, 1.0, 1.0) == pytest.approx(1.1283792, abs=1e-7)
    assert caputo_power(0.5, 2.0, 1.0) == pytest.approx(2 / math.gamma(2.5), rel=1e-15)


def test_power_rule_against_extended_precision():
    with mp.workdps(30):
        k, a, t = mp.mpf("1.334"), mp.mpf("0.3"), mp.mpf("0.5")
        expected = mp.gamma(k + 1) / mp.gamma(k + 1 - a) * t ** (k - a)
    assert caputo_power(0.3, 1.334, 0.5) == pytest.approx(float(expected), rel=1e-14)


def test_power_rule_vectorised():
    t = np.array([0.25, 0.5, 1.0])
    assert np.allclose(caputo_power(0.4, 1.5, t), [caputo_power(0.4, 1.5, s) for s in t], rtol=0, atol=0)


@pytest.mark.parametrize("kappa, t", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -0.5)])
def test_power_rule_domain(kappa, t):
    with pytest.raises(DomainError):
        caputo_power(0.5, kappa, t)


def test_power_rule_checks_alpha():
    with pytest.raises(ParameterError):
        caputo_power(1.2, 1.0, 1.0)


def test_quadrature_examples():
    assert caputo_quadrature(0.5, Linear(0.0, 1.0), 1.0) == pytest.approx(1 / math.gamma(1.5), rel=1e-10)
    assert caputo_quadrature(0.3, PowerProfile(2.0), 0.7) == pytest.approx(caputo_power(0.3, 2.0, 0.7), rel=1e-10)
    assert caputo_quadrature(0.3, PowerProfile(1.334), 0.5) == pytest.approx(caputo_power(0.3, 1.334, 0.5), rel=1e-8)


@pytest.mark.parametrize("kappa", [0.5, 1.0, 1.334, 2.0, 3.0])
@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("t", [0.05, 0.7, 1.0])
def test_quadrature_matches_power_rule(kappa, alpha, t):
    got = caputo_quadrature(alpha, PowerProfile(kappa), t)
    assert got == pytest.approx(caputo_power(alpha, kappa, t), rel=1e-9)


def test_log_profile_self_convergence():
    f = LogProfile(1.667, 0.332, 1.0)
    s = QuadratureSettings()
    assert caputo_quadrature(0.5, f, 1.0, s) == pytest.approx(caputo_quadrature(0.5, f, 1.0, s.doubled()), rel=1e-8)


@pytest.mark.parametrize("f", [LogProfile(1.667, 0.332), LogProfile(1.333, -0.334), JacobiProfile(1.268, 1.534)], ids=repr)
def test_quadrature_against_extended_precision(f):
    alpha, t = 0.5, 0.8
    with mp.workdps(30):
        dy = lambda s: mp.mpf(f(float(s), 1))  # noqa: E731
        val = mp.quad(lambda s: dy(s) * (t - s) ** (-alpha), [0, t / 2, t]) / mp.gamma(1 - alpha)
    assert caputo_quadrature(alpha, f, t) == pytest.approx(float(val), rel=1e-8)


def test_quadrature_domain():
    with pytest.raises(DomainError):
        caputo_quadrature(0.5, Quadratic(), 0.0)


def test_closed_forms():
    assert caputo_closed_form(0.5, Quadratic(), 1.0) == pytest.approx(2 / math.gamma(2.5))
    assert caputo_closed_form(0.5, Linear(4.0, 3.0), 1.0) == pytest.approx(3 / math.gamma(1.5))
    assert caputo_closed_form(0.5, Constant(2.0), 1.0) == 0.0
    assert caputo_closed_form(0.5, LogProfile(1.5, 0.1), 1.0) is None


def test_rl_integral_examples():
    assert rl_integral(1.0, lambda s: 1.0, 2.0) == pytest.approx(2.0, rel=1e-12)
    assert rl_integral(0.5, lambda s: 1.0, 1.0) == pytest.approx(1 / math.gamma(1.5), rel=1e-10)
    assert rl_integral(0.3, lambda s: s, 0.6) == pytest.approx(0.6**1.3 / math.gamma(2.3), rel=1e-10)


@pytest.mark.parametrize("beta", [0.0, 1.5, -0.2])
def test_rl_integral_order_checked(beta):
    with pytest.raises(ParameterError):
        rl_integral(beta, lambda s: 1.0, 1.0)


@pytest.mark.parametrize("f", ANALYTIC, ids=repr)
def test_caputo_equals_rl_integral_of_derivative(f):
    rng = np.random.default_rng(zlib.crc32(repr(f).encode()))
    T = f.T if f.T is not None else 1.0
    for alpha, frac in zip(rng.uniform(0.05, 0.95, 10), rng.uniform(0.05, 1.0, 10)):
        t = frac * T
        lhs = caputo_quadrature(alpha, f, t)
        rhs = rl_integral(1.0 - alpha, lambda s: f(s, 1), t)
        assert lhs == pytest.approx(rhs, rel=1e-8)


@pytest.mark.parametrize("kappa, alpha", [(1.334, 0.3), (0.5, 0.7), (2.0, 0.5)])
def test_tighter_tolerance_never_hurts(kappa, alpha):
    exact = caputo_power(alpha, kappa, 0.9)
    floor = 4 * np.finfo(float).eps * abs(exact)
    errors = [abs(caputo_quadrature(alpha, PowerProfile(kappa), 0.9, QuadratureSettings(rtol=r)) - exact)
              for r in (1e-4, 5e-5, 1e-6, 5e-7, 1e-8, 5e-9, 1e-10, 5e-11, 1e-12)]
    for prev, cur in zip(errors, errors[1:]):
        assert cur <= 2 * max(prev, floor)


def test_tolerance_failure_carries_estimate():
    tight = QuadratureSettings(rtol=1e-14, max_depth=2, nodes=2)
    with pytest.raises(ConvergenceError) as info:
        caputo_quadrature(0.5, LogProfile(1.1, 0.9), 1.0, tight)
    assert math.isfinite(info.value.estimate)
    assert info.value.bound > 0
