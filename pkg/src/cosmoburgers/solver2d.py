"""(2+1)-dimensional unsplit finite-volume solver.

Dimension-wise limited reconstruction feeding Godunov fluxes in x and y,
with RK4 (expanding) or SSP-RK3 (contracting) time integration and the 2D
step-size rules.  Array layout is values[j, k] with j indexing x and k
indexing y.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagnostics import DiagnosticsRecord, total_variation_2d
from .model import Background, FluxModel, Regime, geometry_coefficient, source
from .riemann import interface_flux
from .runs import Snapshot, SnapshotSeries, integrate
from .solver1d import (
    STEPPERS,
    BoundaryRule,
    SpaceOrder,
    StepPolicy,
    _check_step,
    euler_combine,
    limited_difference,
    rk4_combine,
    ssprk3_combine,
)


@dataclass(frozen=True)
class Grid2D:
    """Uniform Jx x Jy grid on [0, Lx] x [0, Ly].

    The regime step rules assume square cells, so dx == dy is enforced.
    """

    Lx: float
    Ly: float
    Jx: int
    Jy: int

    def __post_init__(self):
        if self.Lx <= 0.0 or self.Ly <= 0.0:
            raise ValueError("grid lengths must be positive")
        if self.Jx < 4 or self.Jy < 4:
            raise ValueError("at least 4 cells are required in each direction")
        if abs(self.dx - self.dy) > 1e-12 * max(self.dx, self.dy):
            raise ValueError("the 2D step rules require dx == dy")

    @property
    def dx(self) -> float:
        return self.Lx / self.Jx

    @property
    def dy(self) -> float:
        return self.Ly / self.Jy

    def centers_x(self) -> np.ndarray:
        return (np.arange(self.Jx) + 0.5) * self.dx

    def centers_y(self) -> np.ndarray:
        return (np.arange(self.Jy) + 0.5) * self.dy


@dataclass(frozen=True)
class Field2D:
    values: np.ndarray
    tau: float

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2:
            raise ValueError("Field2D values must be two-dimensional")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _pad2(values: np.ndarray, boundary: BoundaryRule, width: int = 2) -> np.ndarray:
    mode = "wrap" if boundary is BoundaryRule.PERIODIC else "edge"
    return np.pad(values, width, mode=mode)


def reconstruct_2d(field: Field2D, grid: Grid2D, boundary: BoundaryRule = BoundaryRule.OUTFLOW):
    """Per-cell traces (west, east, south, north) of the limited reconstruction.

    The limiter is the 1D rule applied direction by direction, including the
    sign guard on the one-sided differences.
    """
    ext = _pad2(field.values, boundary, 1)
    ldx = limited_difference(ext, axis=0)[:, 1:-1]
    ldy = limited_difference(ext, axis=1)[1:-1, :]
    v = field.values
    return v - 0.5 * ldx, v + 0.5 * ldx, v - 0.5 * ldy, v + 0.5 * ldy


def _interface_states_2d(values, boundary, order_space):
    """Left/right states along x and bottom/top states along y.

    Returns (xl, xr, yl, yr) with shapes (Jx+1, Jy) for the x pair and
    (Jx, Jy+1) for the y pair.
    """
    ext = _pad2(values, boundary, 2)
    cells_x = ext[1:-1, 2:-2]
    cells_y = ext[2:-2, 1:-1]
    if order_space is SpaceOrder.FIRST:
        return cells_x[:-1, :], cells_x[1:, :], cells_y[:, :-1], cells_y[:, 1:]
    ldx = limited_difference(ext, axis=0)[:, 2:-2]
    ldy = limited_difference(ext, axis=1)[2:-2, :]
    xl = cells_x[:-1, :] + 0.5 * ldx[:-1, :]
    xr = cells_x[1:, :] - 0.5 * ldx[1:, :]
    yl = cells_y[:, :-1] + 0.5 * ldy[:, :-1]
    yr = cells_y[:, 1:] - 0.5 * ldy[:, 1:]
    return xl, xr, yl, yr


def _rhs_values_2d(values, tau, grid, bg, model, order_space, boundary):
    m = geometry_coefficient(tau, bg)
    xl, xr, yl, yr = _interface_states_2d(values, boundary, order_space)
    flux_x = interface_flux(model.f, xl, xr)
    flux_y = interface_flux(model.g, yl, yr)
    out = -np.diff(flux_x, axis=0) / grid.dx - np.diff(flux_y, axis=1) / grid.dy
    if m != 0.0:
        out = out + m * source(values)
    return out


def rhs_2d(
    field: Field2D,
    grid: Grid2D,
    bg: Background,
    model: FluxModel,
    order_space: SpaceOrder = SpaceOrder.SECOND_MINMOD,
    boundary: BoundaryRule = BoundaryRule.OUTFLOW,
) -> np.ndarray:
    """Unsplit semi-discrete right-hand side with Godunov fluxes in x and y."""
    return _rhs_values_2d(
        field.values, field.tau, grid, bg, model, order_space, boundary
    )


def _step2(combine, field, grid, bg, model, dt, order_space, boundary):
    _check_step(bg, field.tau, dt)

    def rhs_fn(vals, tau):
        return _rhs_values_2d(vals, tau, grid, bg, model, order_space, boundary)

    return Field2D(combine(field.values, field.tau, dt, rhs_fn), field.tau + dt)


def step_euler_2d(field, grid, bg, model, dt, order_space=SpaceOrder.SECOND_MINMOD,
                  boundary=BoundaryRule.OUTFLOW) -> Field2D:
    return _step2(euler_combine, field, grid, bg, model, dt, order_space, boundary)


def step_rk4_2d(field, grid, bg, model, dt, order_space=SpaceOrder.SECOND_MINMOD,
                boundary=BoundaryRule.OUTFLOW) -> Field2D:
    """RK4 update; the integrator used for expanding-background runs."""
    return _step2(rk4_combine, field, grid, bg, model, dt, order_space, boundary)


def step_ssprk3_2d(field, grid, bg, model, dt, order_space=SpaceOrder.SECOND_MINMOD,
                   boundary=BoundaryRule.OUTFLOW) -> Field2D:
    """Three-stage SSP Runge-Kutta update (Shu-Osher form), used when contracting.

    u1 = u + dt G(u, tau); u2 = (3u + u1 + dt G(u1, tau+dt))/4;
    u_next = (u + 2 u2 + 2 dt G(u2, tau+dt/2))/3 -- a convex combination of
    forward-Euler steps.
    """
    return _step2(ssprk3_combine, field, grid, bg, model, dt, order_space, boundary)


# ---------------------------------------------------------------------------
# 2D time-step policy


def _trace_abs_max(values, boundary, order_space) -> float:
    if order_space is SpaceOrder.FIRST:
        return float(np.max(np.abs(values)))
    xl, xr, yl, yr = _interface_states_2d(values, boundary, order_space)
    m = max(np.max(np.abs(xl)), np.max(np.abs(xr)))
    m = max(m, np.max(np.abs(yl)), np.max(np.abs(yr)))
    return float(m)


def _dt_2d_values(values, tau, grid, bg, policy, boundary, prev):
    # CFL part uses the reconstructed interface traces; the regime-specific
    # bounds use cell values, as the rules are stated.
    trace_max = _trace_abs_max(values, boundary, policy.order_space)
    cfl_bound = 0.5 * grid.dx / trace_max if trace_max > 0.0 else np.inf
    if bg.regime is Regime.FLAT:
        return cfl_bound
    if bg.regime is Regime.EXPANDING:
        v2min = float(np.min(values * values))
        src = tau / (bg.kappa * (1.0 - v2min)) if v2min < 1.0 else np.inf
        return min(cfl_bound, src)
    # contracting
    vmax = float(np.max(np.abs(values)))
    transport = grid.dy / vmax if vmax > 0.0 else np.inf
    factor = 0.5 if bg.kappa <= 1.0 else 0.5 / bg.kappa
    dt = factor * min(transport, 2.0 * abs(tau))
    if prev is not None:
        prev_dt, prev_tau = prev
        dt = min(dt, (tau / prev_tau) * prev_dt)
    return dt


def dt_2d(field: Field2D, grid: Grid2D, bg: Background, policy: StepPolicy,
          boundary: BoundaryRule = BoundaryRule.OUTFLOW,
          prev: tuple[float, float] | None = None) -> float:
    """2D step bound.

    Expanding: min of the CFL bound (dtau/dx) max|traces| <= 1/2 and the
    source bound (1/kappa) min(tau/(1-v^2)).  Contracting: the kappa-cased
    bound (1/2 or 1/(2 kappa)) min(dy/max|v|, 2|tau|), capped by the
    geometric-shrink rule dt_n <= (tau_n/tau_{n-1}) dt_{n-1} once a previous
    step exists.  Flat: the CFL bound alone.  The 1D cfl_number is not
    stacked on top of these rules.
    """
    return _dt_2d_values(field.values, field.tau, grid, bg, policy, boundary, prev)


# ---------------------------------------------------------------------------
# run driver


@dataclass(frozen=True)
class RunConfig2D:
    grid: Grid2D
    background: Background
    flux: FluxModel
    policy: StepPolicy
    boundary: BoundaryRule
    initial: np.ndarray
    checkpoints: tuple[float, ...]
    tau_end: float
    budget: int = 10_000_000
    dt_schedule: tuple[float, ...] | None = None
    collect_dts: bool = False


def _diagnose_2d(values, tau, grid) -> DiagnosticsRecord:
    vmax = float(np.max(np.abs(values)))
    tv_x, tv_y = total_variation_2d(values)
    return DiagnosticsRecord(
        tau=tau,
        max_abs_v=vmax,
        overshoot=max(0.0, vmax - 1.0),
        tv_x=tv_x,
        tv_y=tv_y,
        l2_norm=float(np.sqrt(np.sum(values * values) * grid.dx * grid.dy)),
    )


def run_2d(config: RunConfig2D) -> SnapshotSeries:
    """Integrate the 2D model between tau0 and tau_end with checkpoint landing."""
    from .solver1d import _validate_run

    grid, bg = config.grid, config.background
    _validate_run(bg, config.checkpoints, config.tau_end)
    initial = np.asarray(config.initial, dtype=float)
    if initial.shape != (grid.Jx, grid.Jy):
        raise ValueError(f"initial data must have shape ({grid.Jx}, {grid.Jy})")
    if not np.all(np.isfinite(initial)):
        raise ValueError("initial data must be finite")
    policy = config.policy

    def rhs_fn(vals, tau):
        return _rhs_values_2d(
            vals, tau, grid, bg, config.flux, policy.order_space, config.boundary
        )

    def dt_fn(vals, tau, prev):
        return _dt_2d_values(vals, tau, grid, bg, policy, config.boundary, prev)

    series = SnapshotSeries()

    def record(vals, tau):
        series.snapshots.append(
            Snapshot(Field2D(vals, tau), _diagnose_2d(vals, tau, grid))
        )

    integrate(
        initial,
        bg.tau0,
        tuple(config.checkpoints) + (config.tau_end,),
        rhs=rhs_fn,
        stepper=STEPPERS[policy.order_time],
        dt_policy=dt_fn,
        record=record,
        series=series,
        budget=config.budget,
        dt_schedule=config.dt_schedule,
        collect_dts=config.collect_dts,
    )
    return series


__all__ = [
    "Grid2D",
    "Field2D",
    "reconstruct_2d",
    "rhs_2d",
    "step_euler_2d",
    "step_rk4_2d",
    "step_ssprk3_2d",
    "dt_2d",
    "RunConfig2D",
    "run_2d",
]
