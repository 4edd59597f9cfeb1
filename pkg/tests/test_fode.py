import math

import numpy as np
import pytest

from l1caputo import (
    FodeProblem,
    LogProfile,
    ManufacturedPower,
    ParameterError,
    Quadratic,
    caputo_power,
    global_error,
    l1_apply,
    make_grid,
    manufactured_problem,
    solve_fode,
)
from l1caputo.fode import gronwall_factor, measured_truncation


@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
def test_constant_solution_is_a_fixed_point(alpha):
    y0, lam = 3.7, 1.0
    problem = FodeProblem(alpha, lam, lambda t: lam * y0 + 0 * t, y0)
    Y = solve_fode(problem, make_grid(1.0, 256)).Y
    np.testing.assert_allclose(Y, y0, rtol=1e-12, atol=0)


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_linear_solution_is_reproduced(alpha):
    problem = FodeProblem(alpha, 0.0, lambda t: np.where(t > 0, caputo_power(alpha, 1.0, np.maximum(t, 1e-300)), 0.0), 0.0)
    g = make_grid(1.0, 128)
    sol = solve_fode(problem, g)
    assert np.max(np.abs(sol.Y - g.nodes)) <= 1e-12


def test_quadratic_global_order():
    alpha = 0.5
    exact = ManufacturedPower(2.0)
    problem = manufactured_problem(alpha, 0.0, exact)
    errs = [global_error(solve_fode(problem, make_grid(1.0, N)), exact).max_error for N in (64, 128, 256, 512)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    orders = [math.log2(a / b) for a, b in zip(errs, errs[1:])]
    assert min(orders) >= 1.4


def test_initial_value_is_kept_exactly():
    problem = FodeProblem(0.3, 2.0, lambda t: np.sin(t), -1.25)
    assert solve_fode(problem, make_grid(1.0, 10)).Y[0] == -1.25


def test_error_against_itself_is_zero():
    problem = manufactured_problem(0.4, 1.0, ManufacturedPower(1.5, 2.0))
    sol = solve_fode(problem, make_grid(1.0, 64))
    report = global_error(sol, lambda t: np.interp(t, sol.grid.nodes, sol.Y))
    assert report.max_error == 0.0


def test_max_error_is_max_of_node_errors():
    exact = ManufacturedPower(2.0)
    sol = solve_fode(manufactured_problem(0.6, 1.0, exact), make_grid(1.0, 32))
    report = global_error(sol, exact)
    assert report.max_error == np.max(np.abs(report.errors[1:]))
    assert report.errors[0] == 0.0


@pytest.mark.parametrize("lam", [0.0, 1.0, 10.0, 100.0])
@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("N", [16, 128, 1024])
def test_decay_is_monotone_and_bounded(lam, alpha, N):
    Y = solve_fode(FodeProblem(alpha, lam, lambda t: 0 * t, 1.0), make_grid(1.0, N)).Y
    assert np.all(Y >= 0) and np.all(Y <= 1)
    assert np.all(np.diff(np.abs(Y)) <= 0)


@pytest.mark.parametrize("lam", [0.0, 0.5, 20.0])
@pytest.mark.parametrize("alpha", [0.15, 0.55, 0.95])
def test_residual_reproduces_source(lam, alpha):
    g = make_grid(2.0, 200)
    f = lambda t: np.cos(3 * t) + t**0.3  # noqa: E731
    Y = solve_fode(FodeProblem(alpha, lam, f, 0.7, 2.0), g).Y
    lhs = l1_apply(alpha, g, Y).values + lam * Y[1:]
    np.testing.assert_allclose(lhs, f(g.nodes[1:]), rtol=1e-10, atol=1e-10)


@pytest.mark.parametrize("lam", [0.0, 1.0])
@pytest.mark.parametrize("N", [64, 256])
@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
def test_gronwall_bound_holds(lam, N, alpha):
    exact = ManufacturedPower(2.0)
    g = make_grid(1.0, N)
    sol = solve_fode(manufactured_problem(alpha, lam, exact), g)
    R = measured_truncation(alpha, exact, g, caputo=lambda t: exact.caputo(alpha, t))
    report = global_error(sol, exact, R, alpha)
    assert report.gronwall_bound == pytest.approx(gronwall_factor(alpha, 1.0) * np.max(np.abs(R)))
    assert report.max_error <= report.gronwall_bound * (1 + 1e-6)


def test_gronwall_bound_with_rough_solution():
    alpha, exact = 0.4, ManufacturedPower(0.6, 1.0)
    g = make_grid(1.0, 256)
    sol = solve_fode(manufactured_problem(alpha, 3.0, exact), g)
    R = measured_truncation(alpha, exact, g, caputo=lambda t: exact.caputo(alpha, t))
    assert global_error(sol, exact, R, alpha).max_error <= gronwall_factor(alpha, 1.0) * np.max(np.abs(R)) * (1 + 1e-6)


def test_profile_manufactured_problem():
    problem = manufactured_problem(0.5, 1.0, Quadratic())
    assert problem.y0 == 0.0
    with pytest.raises(ParameterError):
        manufactured_problem(0.5, 1.0, LogProfile(1.5, 0.2))


def test_non_finite_source_names_node():
    g = make_grid(1.0, 4)
    bad = lambda t: np.where(t == 0.5, np.nan, 1.0)  # noqa: E731
    with pytest.raises(ParameterError, match=r"n=2"):
        solve_fode(FodeProblem(0.5, 1.0, bad, 0.0), g)


def test_scalar_only_source_is_accepted():
    g = make_grid(1.0, 8)
    Y = solve_fode(FodeProblem(0.5, 1.0, lambda t: math.exp(-t), 0.0), g).Y
    assert Y.shape == (9,)


def test_problem_validation():
    with pytest.raises(ParameterError):
        FodeProblem(0.5, -1.0, lambda t: t, 0.0)
    with pytest.raises(ParameterError):
        FodeProblem(1.5, 1.0, lambda t: t, 0.0)
    with pytest.raises(ParameterError):
        solve_fode(FodeProblem(0.5, 1.0, lambda t: t, 0.0, T=2.0), make_grid(1.0, 8))
    with pytest.raises(ParameterError):
        global_error(solve_fode(FodeProblem(0.5, 1.0, lambda t: t, 0.0), make_grid(1.0, 8)), lambda t: t, np.ones(8))
