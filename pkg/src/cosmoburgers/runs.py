"""Checkpoint-driven time integration shared by the 1D and 2D drivers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np


class NumericalAbort(RuntimeError):
    """Raised when a run produces non-finite values or an invalid step.

    Carries the series accumulated so far, whose last snapshot is the last
    good recorded state.
    """

    def __init__(self, message: str, series: "SnapshotSeries"):
        super().__init__(message)
        self.series = series


class BudgetExceeded(RuntimeError):
    """Raised when a run exceeds its step-count budget."""

    def __init__(self, message: str, series: "SnapshotSeries"):
        super().__init__(message)
        self.series = series


@dataclass(frozen=True)
class Snapshot:
    field: Any
    diagnostics: Any


@dataclass
class SnapshotSeries:
    """Ordered run checkpoints plus summary statistics of the step history."""

    snapshots: list[Snapshot] = field(default_factory=list)
    step_count: int = 0
    dt_first: float | None = None
    dt_last: float | None = None
    dt_min: float = np.inf
    dt_max: float = 0.0
    max_overshoot: float = 0.0
    dt_sequence: list[float] | None = None

    def taus(self) -> list[float]:
        return [s.field.tau for s in self.snapshots]

    def at(self, tau: float) -> Snapshot:
        for s in self.snapshots:
            if s.field.tau == tau:
                return s
        raise KeyError(f"no snapshot at tau={tau}")

    def dt_summary(self) -> dict:
        return {
            "first": self.dt_first,
            "last": self.dt_last,
            "min": None if not np.isfinite(self.dt_min) else self.dt_min,
            "max": self.dt_max if self.dt_max > 0.0 else None,
        }


def integrate(
    values: np.ndarray,
    tau0: float,
    targets: Sequence[float],
    *,
    rhs: Callable[[np.ndarray, float], np.ndarray],
    stepper: Callable[[np.ndarray, float, float, Callable], np.ndarray],
    dt_policy: Callable[[np.ndarray, float, tuple | None], float],
    record: Callable[[np.ndarray, float], None],
    series: SnapshotSeries,
    budget: int = 10_000_000,
    dt_schedule: Sequence[float] | None = None,
    collect_dts: bool = False,
) -> SnapshotSeries:
    """March ``values`` from tau0 through each target time, landing exactly.

    The step before a target is shortened to hit it, so recorded states are
    true scheme states rather than time interpolants.  ``dt_policy`` gets the
    previous (policy_dt, tau) pair so regime rules that chain off the prior
    step can apply; the chained value is the pre-truncation policy step, so
    landing on a checkpoint does not strangle the subsequent step sizes.
    ``dt_schedule`` replays a forced step sequence instead of the policy.
    """
    targets = list(targets)
    if any(b <= a for a, b in zip([tau0] + targets, targets)):
        raise ValueError("target times must be strictly increasing from tau0")
    record(values, tau0)
    schedule = iter(dt_schedule) if dt_schedule is not None else None
    if collect_dts:
        series.dt_sequence = []
    tau = tau0
    prev: tuple[float, float] | None = None
    for target in targets:
        while tau < target:
            remaining = target - tau
            if schedule is not None:
                try:
                    dt_pol = float(next(schedule))
                except StopIteration:
                    raise NumericalAbort(
                        f"dt schedule exhausted at tau={tau}", series
                    ) from None
            else:
                dt_pol = dt_policy(values, tau, prev)
            if not dt_pol > 0.0:
                raise NumericalAbort(f"nonpositive time step at tau={tau}", series)
            prev = (dt_pol, tau)
            landing = dt_pol >= remaining
            dt = remaining if landing else dt_pol
            values = stepper(values, tau, dt, rhs)
            tau = target if landing else tau + dt
            series.step_count += 1
            if series.dt_first is None:
                series.dt_first = dt
            series.dt_last = dt
            series.dt_min = min(series.dt_min, dt)
            series.dt_max = max(series.dt_max, dt)
            if collect_dts:
                series.dt_sequence.append(dt)
            if series.step_count > budget:
                raise BudgetExceeded(
                    f"step budget of {budget} exceeded at tau={tau}", series
                )
            if not np.all(np.isfinite(values)):
                raise NumericalAbort(f"non-finite values at tau={tau}", series)
            vmax = float(np.max(np.abs(values)))
            if vmax - 1.0 > series.max_overshoot:
                series.max_overshoot = vmax - 1.0
        record(values, target)
    return series


__all__ = [
    "Snapshot",
    "SnapshotSeries",
    "NumericalAbort",
    "BudgetExceeded",
    "integrate",
]
