"""L1 discretisation of the Caputo fractional derivative.

Operator and solver kernels, singular quadrature references, weighted
Sobolev-space tools and the convergence-order experiment harness.
"""

from .caputo import caputo_closed_form, caputo_power, caputo_quadrature, rl_integral
from .errors import ConvergenceError, DivergenceError, DomainError, L1CaputoError, ParameterError
from .experiments import (
    OrderEstimate,
    TableRow,
    TruncationBreakdown,
    TruncationStudy,
    estimate_order,
    jacobi_profile,
    log_adjusted_order,
    log_profile,
    power_profile,
    reproduce_table,
    theoretical_order,
    truncation_study,
)
from .fode import ErrorReport, FodeProblem, FodeSolution, ManufacturedPower, global_error, manufactured_problem, solve_fode
from .grids import FractionalOrder, UniformGrid, make_grid, refine
from .kernels import BACKEND
from .l1 import DiscreteDerivative, L1Coefficients, l1_apply, l1_apply_integrated, l1_apply_single, l1_coefficients
from .profiles import Constant, JacobiProfile, Linear, LogProfile, PowerProfile, Quadratic, Sampled, TestFunction, eval_function
from .quadrature import QuadratureSettings
from .weights import (
    ConstantOne,
    IntervalFactor,
    JacobiWeight,
    LambdaShape,
    LebesgueExponent,
    LogInverseWeight,
    PowerWeight,
    WeightSpec,
    ap_characteristic,
    lambda_closed_form,
    lambda_numeric,
    weight_eval,
    weighted_lp_norm,
    weighted_sobolev_norm,
    wj_factor,
    wj_factors,
)

__version__ = "0.1.0"
