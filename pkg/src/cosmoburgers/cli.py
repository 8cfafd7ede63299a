"""Command-line driver: single runs, convergence studies, scheme matrices.

Subcommands: run, converge, scheme-matrix, homogeneous, compare-diagonal.
Runs are seedless and deterministic: identical configs produce byte-identical
CSV outputs regardless of --threads.

Exit codes: 0 ok, 2 config error, 3 numerical abort, 4 step budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, parse_config, solver_config
from .diagnostics import diagonal_extract, norm_l1, norm_l2
from .model import Background, Regime, homogeneous_solution
from .output import (
    DESIGN_DECISIONS,
    diagnostics_dict,
    format_number,
    manifest_payload,
    scheme_description,
    write_manifest,
    write_snapshot_csv_1d,
    write_snapshot_csv_2d,
)
from .runs import BudgetExceeded, NumericalAbort
from .solver1d import RunConfig1D, SpaceOrder, TimeOrder, run_1d
from .solver2d import run_2d

PRESET_CONFIGS = {
    "step1d": (
        "dimension = 1\nregime = expanding\nkappa = 2\nic = step1d\n"
        "J = 1000\ncheckpoints = 2\ntau_end = 5\n"
    ),
    "sine1d_a": (
        "dimension = 1\nregime = expanding\nkappa = 2\nic = sine1d_a\n"
        "J = 1024\ncheckpoints = 16, 64, 128\ntau_end = 256\n"
    ),
    "sine1d_b": (
        "dimension = 1\nregime = expanding\nkappa = 1\nic = sine1d_b\n"
        "J = 1024\ncheckpoints = 4, 64, 256\ntau_end = 512\n"
    ),
    "paper2d": (
        "dimension = 2\nregime = expanding\nkappa = 2\nic = paper2d\n"
        "J = 200\ncheckpoints = 16, 32\ntau_end = 64\n"
    ),
    "zero": "dimension = 1\nregime = flat\nic = zero\nJ = 100\ntau_end = 1\n",
}


def _strip_keys(text: str, keys: set[str]) -> str:
    kept = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        key = stripped.split("=", 1)[0].strip() if "=" in stripped else None
        if key in keys:
            continue
        kept.append(line)
    return "\n".join(kept)


def _apply_overrides(text: str, args) -> str:
    overrides: dict[str, str] = {}
    if args.kappa is not None:
        overrides["kappa"] = format_number(args.kappa)
    if args.cfl is not None:
        overrides["cfl"] = format_number(args.cfl)
    if args.tau_end is not None:
        overrides["tau_end"] = format_number(args.tau_end)
    if args.grid is not None:
        spec = args.grid.lower()
        if "x" in spec:
            jx, jy = spec.split("x", 1)
            overrides["Jx"] = jx
            overrides["Jy"] = jy
            text = _strip_keys(text, {"J", "Jx", "Jy"})
        else:
            overrides["J"] = spec
            text = _strip_keys(text, {"J", "Jx", "Jy"})
    if not overrides:
        return text
    text = _strip_keys(text, set(overrides))
    return text + "\n" + "\n".join(f"{k} = {v}" for k, v in overrides.items()) + "\n"


def _load_config(args) -> tuple[RunConfig, Path | None]:
    if args.config and args.preset:
        raise ConfigError("give either --config or --preset, not both")
    if args.config:
        path = Path(args.config)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
        base = path.parent
    elif args.preset:
        if args.preset not in PRESET_CONFIGS:
            known = ", ".join(sorted(PRESET_CONFIGS))
            raise ConfigError(f"unknown preset {args.preset!r}; known presets: {known}")
        text = PRESET_CONFIGS[args.preset]
        base = None
    else:
        raise ConfigError("a --config file or a --preset name is required")
    return parse_config(_apply_overrides(text, args)), base


def _out_dir(args) -> Path:
    out = args.out or os.environ.get("COSMOBURGERS_OUT") or "cosmoburgers-out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _execute(cfg: RunConfig, base: Path | None):
    solver = solver_config(cfg, base)
    started = time.perf_counter()
    if cfg.dimension == 1:
        series = run_1d(solver)
    else:
        series = run_2d(solver)
    return solver, series, time.perf_counter() - started


def _write_run_outputs(out: Path, cfg: RunConfig, solver, series, wall: float) -> None:
    scheme = scheme_description(solver.policy, solver.boundary, cfg.flux_kind)
    entries = []
    for i, snap in enumerate(series.snapshots):
        name = f"snapshot_{i:03d}.csv"
        if cfg.dimension == 1:
            write_snapshot_csv_1d(out / name, snap.field, solver.grid, solver.background, scheme)
        else:
            write_snapshot_csv_2d(out / name, snap.field, solver.grid, solver.background, scheme)
        entries.append(
            {"tau": snap.field.tau, "file": name, "diagnostics": diagnostics_dict(snap.diagnostics)}
        )
    write_manifest(out / "manifest.json", manifest_payload(cfg.as_dict(), series, wall, entries))


def cmd_run(args) -> int:
    cfg, base = _load_config(args)
    out = _out_dir(args)
    solver, series, wall = _execute(cfg, base)
    _write_run_outputs(out, cfg, solver, series, wall)
    print(f"run complete: {series.step_count} steps, outputs in {out}")
    return 0


def _parse_grid_list(text: str) -> list[int]:
    try:
        grids = [int(p.strip()) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --grids list {text!r}") from exc
    if len(grids) < 2:
        raise ConfigError("--grids needs at least two cell counts")
    return grids


def cmd_converge(args) -> int:
    cfg, base = _load_config(args)
    grids = sorted(_parse_grid_list(args.grids))
    reference = grids[-1]
    for g in grids[:-1]:
        if reference % g != 0:
            raise ConfigError(f"grid {g} does not divide the reference grid {reference}")
    if cfg.ic.startswith("table:"):
        raise ConfigError("convergence studies need a re-evaluable preset initial condition")
    out = _out_dir(args)

    configs = [
        replace(cfg, J=g, Jy=(g if cfg.dimension == 2 else 0)) for g in grids
    ]
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda c: _execute(c, base), configs))

    ref_solver, ref_series, _ = results[-1]
    taus = ref_series.taus()
    measure = (
        (cfg.L / np.array(grids, dtype=float))
        if cfg.dimension == 1
        else (cfg.L / np.array(grids, dtype=float)) * (cfg.Ly / np.array(grids, dtype=float))
    )
    lines = ["J,tau,l1_vs_reference,l2_vs_reference"]
    monotone = {t: True for t in taus}
    previous = {t: None for t in taus}
    for idx, (g, (solver, series, _)) in enumerate(zip(grids[:-1], results[:-1])):
        for snap, ref_snap in zip(series.snapshots, ref_series.snapshots):
            t = ref_snap.field.tau
            l1 = norm_l1(ref_snap.field.values, snap.field.values, cell_measure=measure[idx])
            l2 = norm_l2(ref_snap.field.values, snap.field.values, cell_measure=measure[idx])
            if previous[t] is not None and l1 > previous[t]:
                monotone[t] = False
            previous[t] = l1
            lines.append(f"{g},{format_number(t)},{format_number(l1)},{format_number(l2)}")
    (out / "convergence.csv").write_text("\n".join(lines) + "\n")
    payload = {
        "version": manifest_payload(cfg.as_dict(), ref_series, 0.0, [])["version"],
        "config": cfg.as_dict(),
        "decisions": DESIGN_DECISIONS,
        "grids": grids,
        "reference": reference,
        "monotone_l1_decrease": {format_number(t): bool(v) for t, v in monotone.items()},
    }
    write_manifest(out / "manifest.json", payload)
    print(f"convergence table over J={grids} written to {out}")
    return 0


_SCHEME_COMBOS = (
    ("1S1T", SpaceOrder.FIRST, TimeOrder.EULER),
    ("1S4T", SpaceOrder.FIRST, None),
    ("2S1T", SpaceOrder.SECOND_MINMOD, TimeOrder.EULER),
    ("2S4T", SpaceOrder.SECOND_MINMOD, None),
)


def cmd_scheme_matrix(args) -> int:
    cfg, base = _load_config(args)
    out = _out_dir(args)
    high = TimeOrder.SSPRK3 if cfg.regime is Regime.CONTRACTING else TimeOrder.RK4
    combos = [
        (label.replace("4T", "3T") if high is TimeOrder.SSPRK3 else label,
         space, time_order or high)
        for label, space, time_order in _SCHEME_COMBOS
    ]
    configs = [
        replace(cfg, order_space=space, order_time=torder) for _, space, torder in combos
    ]
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(lambda c: _execute(c, base), configs))
    best_label = combos[-1][0]
    best_series = results[-1][1]
    cell = (cfg.L / cfg.J) if cfg.dimension == 1 else (cfg.L / cfg.J) * (cfg.Ly / cfg.Jy)
    lines = ["scheme,tau,l1_vs_best"]
    for (label, _, _), (_, series, _) in zip(combos, results):
        for snap, best_snap in zip(series.snapshots, best_series.snapshots):
            l1 = norm_l1(snap.field.values, best_snap.field.values, cell_measure=cell)
            lines.append(f"{label},{format_number(snap.field.tau)},{format_number(l1)}")
    (out / "scheme_matrix.csv").write_text("\n".join(lines) + "\n")
    payload = {
        "config": cfg.as_dict(),
        "decisions": DESIGN_DECISIONS,
        "schemes": [label for label, _, _ in combos],
        "best": best_label,
    }
    write_manifest(out / "manifest.json", payload)
    print(f"scheme matrix ({', '.join(label for label, _, _ in combos)}) written to {out}")
    return 0


def cmd_homogeneous(args) -> int:
    try:
        regime = Regime(args.regime)
    except ValueError:
        raise ConfigError(f"unknown regime {args.regime!r}") from None
    if regime is Regime.FLAT:
        bg = Background.flat(args.tau0 if args.tau0 is not None else 0.0)
    else:
        default_tau0 = 1.0 if regime is Regime.EXPANDING else -1.0
        if args.kappa is None:
            raise ConfigError("--kappa is required for expanding/contracting runs")
        bg = Background(regime, args.kappa, args.tau0 if args.tau0 is not None else default_tau0)
    if not -1.0 < args.v0 < 1.0:
        raise ConfigError("--v0 must lie in (-1, 1)")
    try:
        taus = [float(p) for p in args.taus.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad --taus list {args.taus!r}") from None
    out = _out_dir(args)
    lines = ["tau,v"]
    for t in taus:
        v = homogeneous_solution(args.v0, bg.tau0, t, bg)
        lines.append(f"{format_number(t)},{format_number(v)}")
    (out / "homogeneous.csv").write_text("\n".join(lines) + "\n")
    print(f"homogeneous solution table written to {out}")
    return 0


def cmd_compare_diagonal(args) -> int:
    cfg, base = _load_config(args)
    if cfg.dimension != 2:
        raise ConfigError("compare-diagonal needs a 2D configuration")
    if cfg.J != cfg.Jy:
        raise ConfigError("compare-diagonal needs a square grid")
    out = _out_dir(args)
    solver2, series2, _ = _execute(cfg, base)

    # Matched 1D run along x = y: the diagonal has length sqrt(2) Lx and the
    # initial profile is the diagonal of the 2D initial data.
    from .solver1d import Grid1D

    grid1 = Grid1D(math.sqrt(2.0) * cfg.L, cfg.J)
    diag_initial = np.diagonal(np.asarray(solver2.initial)).copy()
    cfg1 = RunConfig1D(
        grid=grid1,
        background=solver2.background,
        flux=solver2.flux.f,
        policy=solver2.policy,
        boundary=solver2.boundary,
        initial=diag_initial,
        checkpoints=cfg.checkpoints,
        tau_end=cfg.tau_end,
        budget=cfg.budget,
    )
    series1 = run_1d(cfg1)

    summary = []
    for i, (snap2, snap1) in enumerate(zip(series2.snapshots, series1.snapshots)):
        s, diag = diagonal_extract(snap2.field, solver2.grid)
        lines = [f"# tau = {format_number(snap2.field.tau)}", "s,v2d_diagonal,v1d"]
        for sj, v2, v1 in zip(s, diag, snap1.field.values):
            lines.append(f"{format_number(sj)},{format_number(v2)},{format_number(v1)}")
        name = f"diagonal_{i:03d}.csv"
        (out / name).write_text("\n".join(lines) + "\n")
        l1 = norm_l1(diag, snap1.field.values, cell_measure=grid1.dy)
        summary.append({"tau": snap2.field.tau, "file": name, "l1": l1})
    payload = {"config": cfg.as_dict(), "decisions": DESIGN_DECISIONS, "diagonal": summary}
    write_manifest(out / "manifest.json", payload)
    print(f"diagonal comparison written to {out}")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="path to a key = value config file")
    parser.add_argument("--preset", help="named default configuration")
    parser.add_argument("--out", help="output directory (default $COSMOBURGERS_OUT)")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for independent runs")
    parser.add_argument("--kappa", type=float, help="override kappa")
    parser.add_argument("--grid", help="override cell count: J or JXxJY")
    parser.add_argument("--cfl", type=float, help="override the CFL number")
    parser.add_argument("--tau-end", dest="tau_end", type=float, help="override tau_end")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosmoburgers",
        description="Finite-volume runs of the cosmological Burgers model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single run with snapshot CSVs and a manifest")
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_conv = sub.add_parser("converge", help="nested-grid convergence study")
    _add_common(p_conv)
    p_conv.add_argument("--grids", required=True, help="comma list of cell counts; largest is the reference")
    p_conv.set_defaults(func=cmd_converge)

    p_mat = sub.add_parser("scheme-matrix", help="first/second order space x Euler/high-order time table")
    _add_common(p_mat)
    p_mat.set_defaults(func=cmd_scheme_matrix)

    p_hom = sub.add_parser("homogeneous", help="tabulate the exact homogeneous solution")
    p_hom.add_argument("--v0", type=float, required=True)
    p_hom.add_argument("--regime", required=True, choices=[r.value for r in Regime])
    p_hom.add_argument("--kappa", type=float)
    p_hom.add_argument("--tau0", type=float)
    p_hom.add_argument("--taus", required=True, help="comma list of output times")
    p_hom.add_argument("--out")
    p_hom.set_defaults(func=cmd_homogeneous)

    p_diag = sub.add_parser("compare-diagonal", help="2D diagonal profile against a matched 1D run")
    _add_common(p_diag)
    p_diag.set_defaults(func=cmd_compare_diagonal)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericalAbort as exc:
        print(f"numerical abort: {exc}", file=sys.stderr)
        return 3
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
