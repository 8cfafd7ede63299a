"""Finite-volume solvers for the cosmological Burgers model.

The balance law v_tau + f(v)_x + g(v)_y = m(tau) h(v) is integrated on
expanding (m = kappa/tau, tau > 0), contracting (tau < 0), and flat (m = 0)
backgrounds in one and two space dimensions, with Godunov fluxes, limited
second-order reconstruction, and explicit Runge-Kutta time stepping under
regime-specific step-size rules.
"""

__version__ = "0.1.0"

from .model import (
    Background,
    FluxModel,
    Regime,
    ScalarFlux,
    cubic_flux,
    flux_eval,
    flux_prime,
    geometry_coefficient,
    homogeneous_solution,
    mixed_flux,
    quadratic_flux,
    scale_factor,
    source,
    t_of_tau,
    tau_of_t,
)
from .riemann import godunov_convex, godunov_general, interface_flux
from .runs import BudgetExceeded, NumericalAbort, Snapshot, SnapshotSeries
from .solver1d import (
    BoundaryRule,
    ExtraRule,
    Field1D,
    Grid1D,
    RunConfig1D,
    SpaceOrder,
    StepPolicy,
    TimeOrder,
    dt_contracting,
    dt_expanding,
    dt_flat,
    policy_dt,
    reconstruct_minmod,
    rhs,
    run_1d,
    step_euler,
    step_rk4,
    step_ssprk3,
)
from .solver2d import (
    Field2D,
    Grid2D,
    RunConfig2D,
    dt_2d,
    reconstruct_2d,
    rhs_2d,
    run_2d,
    step_euler_2d,
    step_rk4_2d,
    step_ssprk3_2d,
)
from .diagnostics import (
    DiagnosticsRecord,
    block_average,
    decay_rate_fit,
    diagonal_extract,
    jump_count,
    norm_l1,
    norm_l2,
    rescale_contracting,
    rescale_expanding,
    segment_affine_residuals,
    total_variation,
    total_variation_2d,
)
from .config import ConfigError, RunConfig, parse_config, solver_config
