"""Snapshot CSV and JSON manifest writers.

Snapshot files carry '#' comment headers (tau, kappa, regime, grid, scheme)
followed by ``y,v,w`` columns in 1D or ``x,y,v,w`` in 2D, all numbers with
17 significant digits so the round trip through text is lossless.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import __version__
from .diagnostics import rescale_contracting, rescale_expanding
from .model import Background, Regime

#: Design-decision toggles that affect numerics, echoed into every manifest
#: so silent default drift is detectable.
DESIGN_DECISIONS = {
    "boundary_default": "outflow-zero-gradient-ghosts",
    "godunov_shock_tie": "first-branch",
    "cfl_multiplies_min_of_bounds_1d": True,
    "cfl_number_not_stacked_on_2d_rules": True,
    "expanding_source_bound": "min-over-cells",
    "contracting_two_argument_bound": "min",
    "geometric_shrink": "cap-on-policy-dt-after-first-step",
    "source_stage_times": "exact-stage-tau",
    "overshoot_handling": "tracked-never-clamped",
    "flat_regime": "m-zero-tau-identity",
    "cfl_2d_uses_trace_maxima": True,
    "mixed_beta_default": 0.5,
    "jump_threshold_factor": 10.0,
    "light_speed_epsilon": 1.0,
}


def format_number(x: float) -> str:
    return format(float(x), ".17g")


def rescaled(field, bg: Background):
    """The regime rescaling of a snapshot: tau^k v, sgn(v)(-tau)^k/sqrt(1-v^2), or v."""
    if bg.regime is Regime.EXPANDING:
        return rescale_expanding(field, bg.kappa).values
    if bg.regime is Regime.CONTRACTING:
        return rescale_contracting(field, bg.kappa).values
    return field.values


def _header_lines(tau, bg, grid_desc, scheme_desc):
    kappa = bg.kappa if bg.regime is not Regime.FLAT else 0.0
    return [
        f"# tau = {format_number(tau)}",
        f"# kappa = {format_number(kappa)}",
        f"# regime = {bg.regime.value}",
        f"# grid = {grid_desc}",
        f"# scheme = {scheme_desc}",
    ]


def write_snapshot_csv_1d(path, field, grid, bg: Background, scheme_desc: str) -> None:
    w = rescaled(field, bg)
    y = grid.centers()
    lines = _header_lines(
        field.tau, bg, f"1d J={grid.J} L={format_number(grid.L)}", scheme_desc
    )
    lines.append("y,v,w")
    for yj, vj, wj in zip(y, field.values, w):
        lines.append(f"{format_number(yj)},{format_number(vj)},{format_number(wj)}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_snapshot_csv_2d(path, field, grid, bg: Background, scheme_desc: str) -> None:
    w = rescaled(field, bg)
    xs = grid.centers_x()
    ys = grid.centers_y()
    grid_desc = (
        f"2d Jx={grid.Jx} Jy={grid.Jy} "
        f"Lx={format_number(grid.Lx)} Ly={format_number(grid.Ly)}"
    )
    lines = _header_lines(field.tau, bg, grid_desc, scheme_desc)
    lines.append("x,y,v,w")
    v = field.values
    for j in range(grid.Jx):
        xj = format_number(xs[j])
        for k in range(grid.Jy):
            lines.append(
                f"{xj},{format_number(ys[k])},{format_number(v[j, k])},{format_number(w[j, k])}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def scheme_description(policy, boundary, flux_name: str) -> str:
    return (
        f"space={policy.order_space.value} time={policy.order_time.value} "
        f"cfl={format_number(policy.cfl_number)} boundary={boundary.value} "
        f"flux={flux_name}"
    )


def write_manifest(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def manifest_payload(cfg_dict: dict, series, wall_time_s: float, snapshots: list[dict]) -> dict:
    return {
        "version": f"cosmoburgers-{__version__}",
        "config": cfg_dict,
        "decisions": DESIGN_DECISIONS,
        "wall_time_s": wall_time_s,
        "step_count": series.step_count,
        "dt_summary": series.dt_summary(),
        "max_overshoot": series.max_overshoot,
        "snapshots": snapshots,
    }


def _json_safe(x):
    if isinstance(x, float) and not np.isfinite(x):
        return None
    return x


def diagnostics_dict(record) -> dict:
    return {k: _json_safe(v) for k, v in record.as_dict().items()}


__all__ = [
    "DESIGN_DECISIONS",
    "format_number",
    "rescaled",
    "write_snapshot_csv_1d",
    "write_snapshot_csv_2d",
    "scheme_description",
    "write_manifest",
    "manifest_payload",
    "diagnostics_dict",
]
