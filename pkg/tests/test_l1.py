import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from l1caputo import (
    Constant,
    DomainError,
    Linear,
    ParameterError,
    PowerProfile,
    l1_apply,
    l1_apply_integrated,
    l1_apply_single,
    l1_coefficients,
    make_grid,
)

SWEEP_ALPHA = [0.1, 0.3, 0.5, 0.6, 0.9]
SWEEP_N = [4, 64, 1024]
alphas = st.floats(min_value=0.01, max_value=0.99)


def test_first_coefficient_is_one():
    assert l1_coefficients(0.5, 4)[0] == 1.0


def test_second_coefficient():
    assert l1_coefficients(0.5, 4)[1] == pytest.approx(math.sqrt(2.0) - 1.0, rel=1e-15)
    assert l1_coefficients(0.5, 4)[1] == pytest.approx(0.4142136, abs=1e-7)


def test_fourth_coefficient():
    assert l1_coefficients(0.3, 8)[3] == pytest.approx(4**0.7 - 3**0.7, rel=1e-14)


def test_coefficient_arguments():
    with pytest.raises(ParameterError):
        l1_coefficients(0.5, 0)
    with pytest.raises(ParameterError):
        l1_coefficients(1.0, 4)
    assert len(l1_coefficients(0.5, 7)) == 7


@given(alphas, st.integers(min_value=2, max_value=3000))
def test_coefficients_positive_and_decreasing(alpha, count):
    b = l1_coefficients(alpha, count).b
    assert b[0] == 1.0
    assert np.all(b > 0)
    assert np.all(np.diff(b) < 0)


@given(alphas, st.integers(min_value=2, max_value=500))
def test_telescoping(alpha, n):
    b = l1_coefficients(alpha, n).b
    i = np.arange(1, n)
    total = math.fsum(b[n - i - 1] - b[n - i])
    assert total == pytest.approx(b[0] - b[n - 1], abs=4 * n * np.finfo(float).eps)


@pytest.mark.parametrize("alpha", SWEEP_ALPHA)
@pytest.mark.parametrize("N", SWEEP_N)
def test_constants_are_annihilated(alpha, N):
    g = make_grid(1.0, N)
    d = l1_apply(alpha, g, Constant(7.0)(g.nodes)).values
    assert np.max(np.abs(d)) <= 1e-12


@pytest.mark.parametrize("alpha", SWEEP_ALPHA)
@pytest.mark.parametrize("N", SWEEP_N)
def test_linears_are_exact(alpha, N):
    g = make_grid(1.0, N)
    slope = -2.5
    d = l1_apply(alpha, g, Linear(3.0, slope)(g.nodes)).values
    t = g.nodes[1:]
    exact = slope * t ** (1 - alpha) / math.gamma(2 - alpha)
    np.testing.assert_allclose(d, exact, rtol=1e-12, atol=0)


def test_linear_example_quarter_grid():
    g = make_grid(1.0, 4)
    d = l1_apply(0.5, g, g.nodes).values
    np.testing.assert_allclose(d, g.nodes[1:] ** 0.5 / math.gamma(1.5), rtol=1e-12)


def test_two_interval_hand_sum():
    # y = t^2 on {0, 1/2, 1}: samples and the bracket are rational, the
    # irrational parts are sqrt(2) from b_1 and tau^{-1/2}, and Gamma(3/2).
    with mp.workdps(40):
        sqrt2 = mp.sqrt(2)
        y0, y1, y2 = Fraction(0), Fraction(1, 4), Fraction(1)
        b0, b1 = mp.mpf(1), sqrt2 - 1
        q = lambda r: mp.mpf(r.numerator) / r.denominator  # noqa: E731
        bracket = q(y2) - b1 * q(y0) - (b0 - b1) * q(y1)
        expected = sqrt2 / mp.gamma(mp.mpf(3) / 2) * bracket
    g = make_grid(1.0, 2)
    samples = PowerProfile(2.0)(g.nodes)
    assert l1_apply(0.5, g, samples).at(2) == pytest.approx(float(expected), rel=1e-14)
    assert l1_apply_single(0.5, g, samples, 2) == pytest.approx(float(expected), rel=1e-14)


def test_single_node_examples():
    g = make_grid(1.0, 16)
    assert l1_apply_single(0.4, g, Constant(3.0)(g.nodes), 1) == pytest.approx(0.0, abs=1e-13)
    exact = 2.0 * 1.0**0.6 / math.gamma(1.6)
    assert l1_apply_single(0.4, g, Linear(1.0, 2.0)(g.nodes), 16) == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("n", [0, 17, -1])
def test_single_node_index_checked(n):
    g = make_grid(1.0, 16)
    with pytest.raises(DomainError):
        l1_apply_single(0.4, g, g.nodes, n)


def test_discrete_derivative_has_no_value_at_zero():
    g = make_grid(1.0, 8)
    d = l1_apply(0.5, g, g.nodes**2)
    assert len(d) == 8
    with pytest.raises(DomainError):
        d.at(0)


def test_sample_length_checked():
    g = make_grid(1.0, 8)
    with pytest.raises(ParameterError):
        l1_apply(0.5, g, np.zeros(8))
    with pytest.raises(ParameterError):
        l1_apply(0.5, g, np.full(9, np.nan))


@settings(max_examples=40, deadline=None)
@given(alphas, st.integers(min_value=1, max_value=200), st.data())
def test_single_matches_full(alpha, N, data):
    g = make_grid(1.0, N)
    y = np.sin(3 * g.nodes) + g.nodes**1.3
    n = data.draw(st.integers(min_value=1, max_value=N))
    assert l1_apply_single(alpha, g, y, n) == pytest.approx(l1_apply(alpha, g, y).at(n), rel=1e-13, abs=1e-13)


finite = st.floats(min_value=-10, max_value=10, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(alphas, st.integers(min_value=1, max_value=300), finite, finite, st.data())
def test_linearity(alpha, N, a, c, data):
    g = make_grid(1.0, N)
    y1 = data.draw(arrays(float, N + 1, elements=finite))
    y2 = data.draw(arrays(float, N + 1, elements=finite))
    lhs = l1_apply(alpha, g, a * y1 + c * y2).values
    rhs = a * l1_apply(alpha, g, y1).values + c * l1_apply(alpha, g, y2).values
    scale = l1_apply(alpha, g, np.abs(a * y1) + np.abs(c * y2) + 1.0).values.__abs__().max()
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(scale, 1.0) * N


@pytest.mark.parametrize("alpha", SWEEP_ALPHA)
@pytest.mark.parametrize("N", [4, 64, 1024])
def test_coefficient_and_integrated_forms_agree(alpha, N):
    rng = np.random.default_rng(int(alpha * 100) + N)
    g = make_grid(1.0, N)
    y = rng.standard_normal(N + 1).cumsum()
    a = l1_apply(alpha, g, y).values
    b = l1_apply_integrated(alpha, g, y).values
    scale = np.max(np.abs(a))
    assert np.max(np.abs(a - b)) <= 1e-12 * scale
