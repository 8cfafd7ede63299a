"""(1+1)-dimensional finite-volume solver.

Godunov fluxes with optional MC-limited piecewise-linear reconstruction in
space, explicit Runge-Kutta integration in time, and regime-specific time
step policies.  The scheme is kept in flux-difference form so that mass is
conserved to rounding on periodic domains.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .diagnostics import DiagnosticsRecord, jump_count, total_variation
from .model import (
    Background,
    FluxModel,
    Regime,
    ScalarFlux,
    geometry_coefficient,
    source,
)
from .riemann import interface_flux
from .runs import Snapshot, SnapshotSeries, integrate


class BoundaryRule(Enum):
    OUTFLOW = "outflow"
    PERIODIC = "periodic"


class SpaceOrder(Enum):
    FIRST = "first"
    SECOND_MINMOD = "second"


class TimeOrder(Enum):
    EULER = "euler"
    SSPRK3 = "ssprk3"
    RK4 = "rk4"


class ExtraRule(Enum):
    NONE = "none"
    KAPPA_SCALED = "kappa_scaled"


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of J cells on [0, L] with centers at (j+1/2) dy."""

    L: float
    J: int

    def __post_init__(self):
        if self.L <= 0.0:
            raise ValueError("grid length must be positive")
        if self.J < 4:
            raise ValueError("at least 4 cells are required")

    @property
    def dy(self) -> float:
        return self.L / self.J

    def centers(self) -> np.ndarray:
        return (np.arange(self.J) + 0.5) * self.dy


@dataclass(frozen=True)
class Field1D:
    """Immutable cell-average snapshot stamped with its time."""

    values: np.ndarray
    tau: float

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("Field1D values must be one-dimensional")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class StepPolicy:
    """CFL number plus the scheme orders and regime step-rule switches."""

    cfl_number: float = 0.7
    order_time: TimeOrder = TimeOrder.RK4
    order_space: SpaceOrder = SpaceOrder.SECOND_MINMOD
    extra_rule: ExtraRule = ExtraRule.NONE

    def __post_init__(self):
        if not 0.0 < self.cfl_number <= 1.0:
            raise ValueError("cfl_number must lie in (0, 1]")


# ---------------------------------------------------------------------------
# spatial discretization


def _pad(values: np.ndarray, boundary: BoundaryRule, width: int = 2) -> np.ndarray:
    mode = "wrap" if boundary is BoundaryRule.PERIODIC else "edge"
    return np.pad(values, width, mode=mode)


def limited_difference(ext: np.ndarray, axis: int = 0) -> np.ndarray:
    """Limited one-cell increment (slope times cell width) along an axis.

    For each interior cell of ``ext`` returns

        sgn(v_{+1} - v_{-1}) min(2|v_0 - v_{-1}|, 2|v_{+1} - v_0|,
                                 |v_{+1} - v_{-1}|/2)

    when the one-sided differences share a sign, else 0: the guard
    (v_{+1}-v_0)(v_0-v_{-1}) > 0 zeroes the slope at local extrema so no
    new extrema are created near discontinuities.
    """

    def seg(a, b):
        sl = [slice(None)] * ext.ndim
        sl[axis] = slice(a, b)
        return ext[tuple(sl)]

    vm, v0, vp = seg(0, -2), seg(1, -1), seg(2, None)
    dm = v0 - vm
    dp = vp - v0
    central = vp - vm
    lim = np.minimum(
        np.minimum(2.0 * np.abs(dm), 2.0 * np.abs(dp)), 0.5 * np.abs(central)
    )
    return np.where(dp * dm > 0.0, np.sign(central) * lim, 0.0)


def reconstruct_minmod(field: Field1D, grid: Grid1D, boundary: BoundaryRule = BoundaryRule.OUTFLOW):
    """Per-cell limited slopes and interface traces (v_L, v_R).

    Returns (delta, v_left, v_right) where delta is the slope per unit
    length and the traces are v -/+ (dy/2) delta at the cell edges.
    """
    ext = _pad(field.values, boundary, 1)
    ld = limited_difference(ext)
    delta = ld / grid.dy
    v_left = field.values - 0.5 * ld
    v_right = field.values + 0.5 * ld
    return delta, v_left, v_right


def _interface_states(values, boundary, order_space):
    """Left/right states at the J+1 interfaces bounding the physical cells."""
    ext = _pad(values, boundary, 2)
    cells = ext[1:-1]
    if order_space is SpaceOrder.FIRST:
        return cells[:-1], cells[1:]
    ld = limited_difference(ext)
    left = cells[:-1] + 0.5 * ld[:-1]
    right = cells[1:] - 0.5 * ld[1:]
    return left, right


def _transport_flux(flux) -> ScalarFlux:
    return flux.f if isinstance(flux, FluxModel) else flux


def _rhs_values(values, tau, grid, bg, flux, order_space, boundary):
    m = geometry_coefficient(tau, bg)
    left, right = _interface_states(values, boundary, order_space)
    flux_at_interfaces = interface_flux(flux, left, right)
    out = -np.diff(flux_at_interfaces) / grid.dy
    if m != 0.0:
        out = out + m * source(values)
    return out


def rhs(
    field: Field1D,
    grid: Grid1D,
    bg: Background,
    flux,
    order_space: SpaceOrder = SpaceOrder.SECOND_MINMOD,
    boundary: BoundaryRule = BoundaryRule.OUTFLOW,
) -> np.ndarray:
    """Semi-discrete right-hand side -(F_{j+1/2}-F_{j-1/2})/dy + m(tau) h(v_j).

    ``flux`` is the transport flux: a ScalarFlux, or a FluxModel whose f
    component is used.
    """
    return _rhs_values(
        field.values, field.tau, grid, bg, _transport_flux(flux), order_space, boundary
    )


# ---------------------------------------------------------------------------
# time steppers (shape-agnostic; shared with the 2D solver)


def euler_combine(values, tau, dt, rhs_fn):
    return values + dt * rhs_fn(values, tau)


def ssprk3_combine(values, tau, dt, rhs_fn):
    u1 = values + dt * rhs_fn(values, tau)
    u2 = (3.0 * values + u1 + dt * rhs_fn(u1, tau + dt)) / 4.0
    return (values + 2.0 * u2 + 2.0 * dt * rhs_fn(u2, tau + 0.5 * dt)) / 3.0


def rk4_combine(values, tau, dt, rhs_fn):
    k1 = rhs_fn(values, tau)
    k2 = rhs_fn(values + (0.5 * dt) * k1, tau + 0.5 * dt)
    k3 = rhs_fn(values + (0.5 * dt) * k2, tau + 0.5 * dt)
    k4 = rhs_fn(values + dt * k3, tau + dt)
    return values + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


STEPPERS = {
    TimeOrder.EULER: euler_combine,
    TimeOrder.SSPRK3: ssprk3_combine,
    TimeOrder.RK4: rk4_combine,
}


def _check_step(bg: Background, tau: float, dt: float) -> None:
    if dt < 0.0:
        raise ValueError("dt must be nonnegative")
    if bg.regime is Regime.CONTRACTING and tau + dt >= 0.0:
        raise ValueError("contracting step would reach tau = 0")


def _step(combine, field, grid, bg, flux, dt, order_space, boundary):
    _check_step(bg, field.tau, dt)
    fx = _transport_flux(flux)

    def rhs_fn(vals, tau):
        return _rhs_values(vals, tau, grid, bg, fx, order_space, boundary)

    return Field1D(combine(field.values, field.tau, dt, rhs_fn), field.tau + dt)


def step_euler(field, grid, bg, flux, dt, order_space=SpaceOrder.SECOND_MINMOD,
               boundary=BoundaryRule.OUTFLOW) -> Field1D:
    """Forward-Euler update v + dt * rhs(v, tau)."""
    return _step(euler_combine, field, grid, bg, flux, dt, order_space, boundary)


def step_ssprk3(field, grid, bg, flux, dt, order_space=SpaceOrder.SECOND_MINMOD,
                boundary=BoundaryRule.OUTFLOW) -> Field1D:
    """Three-stage strong-stability-preserving Runge-Kutta update."""
    return _step(ssprk3_combine, field, grid, bg, flux, dt, order_space, boundary)


def step_rk4(field, grid, bg, flux, dt, order_space=SpaceOrder.SECOND_MINMOD,
             boundary=BoundaryRule.OUTFLOW) -> Field1D:
    """Classical fourth-order Runge-Kutta update with stage-exact source times."""
    return _step(rk4_combine, field, grid, bg, flux, dt, order_space, boundary)


# ---------------------------------------------------------------------------
# time-step policies


def _dt_expanding_values(values, tau, bg, grid, policy):
    vmax = float(np.max(np.abs(values)))
    bound = np.inf
    if vmax > 0.0:
        bound = grid.dy / vmax
    v2min = float(np.min(values * values))
    if v2min < 1.0:
        bound = min(bound, 2.0 * tau / (bg.kappa * (1.0 - v2min)))
    return policy.cfl_number * bound


def _dt_contracting_values(values, tau, bg, grid, policy):
    vmax = float(np.max(np.abs(values)))
    transport = grid.dy / vmax if vmax > 0.0 else np.inf
    if policy.extra_rule is ExtraRule.KAPPA_SCALED and bg.kappa > 1.0:
        geometric = abs(tau) / bg.kappa
    else:
        geometric = min(1.0, 1.0 / bg.kappa) * abs(tau)
    return policy.cfl_number * min(transport, geometric)


def _dt_flat_values(values, grid, policy):
    vmax = float(np.max(np.abs(values)))
    return policy.cfl_number * grid.dy / vmax if vmax > 0.0 else np.inf


def dt_expanding(field: Field1D, bg: Background, grid: Grid1D, policy: StepPolicy) -> float:
    """cfl * min(dy/max|v|, min_j 2 tau / (kappa (1 - v_j^2))).

    The transport bound is skipped for a vanishing field; the source bound
    takes the most restrictive cell (the smallest |v|).
    """
    return _dt_expanding_values(field.values, field.tau, bg, grid, policy)


def dt_contracting(field: Field1D, bg: Background, grid: Grid1D, policy: StepPolicy) -> float:
    """cfl * min(dy/max|v|, min(1, 1/kappa) |tau|).

    Shrinks linearly with |tau| so the run only reaches tau = 0
    asymptotically; with extra_rule=KAPPA_SCALED and kappa > 1 the
    geometric bound is written |tau|/kappa (the same value, kept as an
    explicit policy switch).
    """
    return _dt_contracting_values(field.values, field.tau, bg, grid, policy)


def dt_flat(field: Field1D, grid: Grid1D, policy: StepPolicy) -> float:
    return _dt_flat_values(field.values, grid, policy)


def _policy_dt_values(values, tau, bg, grid, policy):
    if bg.regime is Regime.EXPANDING:
        return _dt_expanding_values(values, tau, bg, grid, policy)
    if bg.regime is Regime.CONTRACTING:
        return _dt_contracting_values(values, tau, bg, grid, policy)
    return _dt_flat_values(values, grid, policy)


def policy_dt(field: Field1D, bg: Background, grid: Grid1D, policy: StepPolicy) -> float:
    """Regime dispatch over the expanding/contracting/flat step rules."""
    return _policy_dt_values(field.values, field.tau, bg, grid, policy)


# ---------------------------------------------------------------------------
# run driver


@dataclass(frozen=True)
class RunConfig1D:
    grid: Grid1D
    background: Background
    flux: ScalarFlux | FluxModel
    policy: StepPolicy
    boundary: BoundaryRule
    initial: np.ndarray
    checkpoints: tuple[float, ...]
    tau_end: float
    budget: int = 10_000_000
    dt_schedule: tuple[float, ...] | None = None
    collect_dts: bool = False


def _diagnose_1d(values, tau, grid) -> DiagnosticsRecord:
    vmax = float(np.max(np.abs(values)))
    return DiagnosticsRecord(
        tau=tau,
        max_abs_v=vmax,
        overshoot=max(0.0, vmax - 1.0),
        jump_count=jump_count(values),
        tv=total_variation(values),
        l2_norm=float(np.sqrt(np.sum(values * values) * grid.dy)),
    )


def _validate_run(bg, checkpoints, tau_end):
    if bg.regime is Regime.CONTRACTING and tau_end >= 0.0:
        raise ValueError("contracting runs must stop at tau_end < 0")
    if tau_end <= bg.tau0:
        raise ValueError("tau_end must exceed tau0")
    pts = list(checkpoints)
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    if pts and (pts[0] <= bg.tau0 or pts[-1] >= tau_end):
        raise ValueError("checkpoints must lie strictly between tau0 and tau_end")


def run_1d(config: RunConfig1D) -> SnapshotSeries:
    """Integrate from tau0 to tau_end, recording snapshots at each checkpoint.

    A snapshot is always recorded at tau0 and at tau_end in addition to the
    requested interior checkpoints.
    """
    grid, bg = config.grid, config.background
    _validate_run(bg, config.checkpoints, config.tau_end)
    initial = np.asarray(config.initial, dtype=float)
    if initial.shape != (grid.J,):
        raise ValueError(f"initial data must have shape ({grid.J},)")
    if not np.all(np.isfinite(initial)):
        raise ValueError("initial data must be finite")
    fx = _transport_flux(config.flux)
    policy = config.policy

    def rhs_fn(vals, tau):
        return _rhs_values(vals, tau, grid, bg, fx, policy.order_space, config.boundary)

    def dt_fn(vals, tau, prev):
        return _policy_dt_values(vals, tau, bg, grid, policy)

    series = SnapshotSeries()

    def record(vals, tau):
        series.snapshots.append(
            Snapshot(Field1D(vals, tau), _diagnose_1d(vals, tau, grid))
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
    "BoundaryRule",
    "SpaceOrder",
    "TimeOrder",
    "ExtraRule",
    "Grid1D",
    "Field1D",
    "StepPolicy",
    "limited_difference",
    "reconstruct_minmod",
    "rhs",
    "step_euler",
    "step_ssprk3",
    "step_rk4",
    "dt_expanding",
    "dt_contracting",
    "dt_flat",
    "policy_dt",
    "RunConfig1D",
    "run_1d",
    "STEPPERS",
]
