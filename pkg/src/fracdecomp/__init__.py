"""fracdecomp: Riemann-Liouville fractional integrals through decompositions
into integer-order derivatives plus moment integrals.

The package provides the gamma machinery, exact reference solutions and a
singularity-removed quadrature oracle, the decomposition coefficients with
their truncation tails and error bound, deterministic ODE/BVP solvers, and
the two application pipelines (fractional integral equation, fractional
variational problem). The `fracdecomp` CLI reproduces the coefficient tables
and comparison figures as CSV files with companion plots.
"""

from .applications import (
    IntegralEquationProblem,
    IntegralEquationResult,
    ReductionError,
    VariationalProblem,
    VariationalResult,
    integral_equation_residual,
    reduce_integral_equation,
    reduce_variational,
    solve_integral_equation,
    solve_variational,
    tracking_cost,
)
from .decomposition import (
    CoefficientSet,
    ExpansionParams,
    GridResult,
    MomentState,
    analytic_series_grid,
    approx_analytic_series,
    approx_left,
    approx_right,
    binomial_reference,
    coeff_A,
    coeff_B,
    coefficient_set,
    decomposition_grid,
    l2_error,
    moments_left,
    moments_right,
    tail_A,
    tail_B,
    truncation_bound,
)
from .quadrature import QuadratureConvergenceError, composite_simpson, integrate_adaptive
from .reference import (
    FunctionSpec,
    Interval,
    SeriesConvergenceError,
    exact_exp_integral,
    exact_fractional_integral,
    exact_power_integral,
    exact_sin_integral,
    rl_integral_oracle,
    rl_right_integral_oracle,
    validate_order,
)
from .solvers import (
    BvpProblem,
    IntegrationError,
    OdeSystem,
    ShootingError,
    ShootingResult,
    Trajectory,
    integrate_rk4,
    integrate_rk4_checked,
    solve_bvp_collocation,
    solve_bvp_shooting,
)
from .special import (
    GammaPoleError,
    gamma,
    gamma_ratio_sequence,
    reciprocal_gamma_product,
)

__version__ = "0.1.0"
