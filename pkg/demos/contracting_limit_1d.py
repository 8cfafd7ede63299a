"""Approach to the light-speed values on a contracting background.

As tau -> 0^- the source stiffens like kappa/|tau| and drives the solution
onto the plateaus +/-1.  The step policy shrinks dt linearly with |tau|, so
the run lands on tau_end = -1e-4 after geometrically decaying steps.  The
only cells left below the plateau straddle the sonic -1 -> +1 crossings,
whose width is set by |tau|/dy.
"""

import numpy as np

from cosmoburgers import (
    Background,
    BoundaryRule,
    FluxModel,
    Grid1D,
    RunConfig1D,
    StepPolicy,
    run_1d,
)
from cosmoburgers.presets import sine_profile_a

grid = Grid1D(np.pi, 1000)
bg = Background.contracting(2.0, -1.0)
series = run_1d(RunConfig1D(
    grid=grid,
    background=bg,
    flux=FluxModel.quadratic(),
    policy=StepPolicy(),
    boundary=BoundaryRule.OUTFLOW,
    initial=sine_profile_a(grid.centers()),
    checkpoints=(-0.5, -0.1024, -0.0128, -0.0016),
    tau_end=-1e-4,
))

print(f"{'tau':>10} {'min|v|':>10} {'max|v|':>10} {'cells |v|>=0.99':>16}")
for snap in series.snapshots:
    v = np.abs(snap.field.values)
    print(f"{snap.field.tau:10.4f} {v.min():10.6f} {v.max():10.6f} "
          f"{np.mean(v >= 0.99) * 100:15.1f}%")

print(f"\nsteps taken: {series.step_count}, final dt: {series.dt_last:.2e}")
print(f"largest overshoot beyond |v| = 1 during the run: {series.max_overshoot:.2e}")
