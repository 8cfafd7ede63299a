"""Deterministic figure rendering from snapshot CSVs and run manifests.

Every figure uses a fixed size, dpi, and colormap, and PNGs are written
without the varying Software metadata chunk, so re-rendering identical
inputs is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .csvio import CsvFormatError, read_snapshot, read_table  # noqa: E402

FIGSIZE = (6.4, 4.8)
DPI = 110
CMAP = "viridis"

KINDS = ("line1d", "overlay1d", "contour2d", "surface3d", "convergence", "decay_loglog")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple
    output: str
    field: str = "auto"
    labels: tuple = ()
    title: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; known: {KINDS}")
        if not self.inputs:
            raise ValueError("a figure needs at least one input")


def load_spec(path) -> FigureSpec:
    raw = json.loads(Path(path).read_text())
    return FigureSpec(
        kind=raw["kind"],
        inputs=tuple(raw["inputs"]),
        output=raw["output"],
        field=raw.get("field", "auto"),
        labels=tuple(raw.get("labels", ())),
        title=raw.get("title", ""),
    )


def _save(fig, output) -> Path:
    out = Path(output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=DPI, metadata={"Software": None})
    plt.close(fig)
    return out


def _default_field(snapshot) -> str:
    # the expanding experiments plot the rescaled profile, the others plot v
    return "w" if snapshot.regime == "expanding" else "v"


def _tau_label(tau: float) -> str:
    return f"tau = {tau:g}"


def _render_line1d(spec: FigureSpec):
    snap = read_snapshot(spec.inputs[0])
    fig, (ax_v, ax_w) = plt.subplots(2, 1, figsize=FIGSIZE, sharex=True)
    y = snap.axis_1d()
    ax_v.plot(y, snap.columns["v"], lw=1.0, color="tab:blue")
    ax_v.set_ylabel("v")
    ax_w.plot(y, snap.columns["w"], lw=1.0, color="tab:red")
    ax_w.set_ylabel("w")
    ax_w.set_xlabel("y")
    ax_v.set_title(spec.title or _tau_label(snap.tau))
    return _save(fig, spec.output)


def _render_overlay1d(spec: FigureSpec):
    fig, ax = plt.subplots(figsize=FIGSIZE)
    name = spec.field
    for i, path in enumerate(spec.inputs):
        snap = read_snapshot(path)
        if snap.dimension != 1:
            raise CsvFormatError(f"{path}: overlay1d needs 1D snapshots")
        column = _default_field(snap) if name == "auto" else name
        label = spec.labels[i] if i < len(spec.labels) else f"J={snap.grid['J']}"
        ax.plot(snap.axis_1d(), snap.columns[column], lw=1.0, label=label)
    ax.set_xlabel("y")
    ax.set_ylabel(column)
    ax.legend(loc="best", fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    return _save(fig, spec.output)


def _render_contour2d(spec: FigureSpec):
    snap = read_snapshot(spec.inputs[0])
    column = _default_field(snap) if spec.field == "auto" else spec.field
    x, y = snap.axes_2d()
    z = snap.field_2d(column)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    filled = ax.contourf(x, y, z.T, levels=24, cmap=CMAP)
    fig.colorbar(filled, ax=ax, label=column)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    ax.set_title(spec.title or _tau_label(snap.tau))
    return _save(fig, spec.output)


def _render_surface3d(spec: FigureSpec):
    snap = read_snapshot(spec.inputs[0])
    column = _default_field(snap) if spec.field == "auto" else spec.field
    x, y = snap.axes_2d()
    z = snap.field_2d(column)
    fig = plt.figure(figsize=FIGSIZE)
    ax = fig.add_subplot(projection="3d")
    X, Y = np.meshgrid(x, y, indexing="ij")
    ax.plot_surface(X, Y, z, cmap=CMAP, linewidth=0, antialiased=False)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel(column)
    ax.set_title(spec.title or _tau_label(snap.tau))
    return _save(fig, spec.output)


def _render_convergence(spec: FigureSpec):
    table = read_table(spec.inputs[0])
    fig, ax = plt.subplots(figsize=FIGSIZE)
    taus = sorted(set(table["tau"]))
    for tau in taus:
        mask = table["tau"] == tau
        ax.loglog(table["J"][mask], table["l1_vs_reference"][mask],
                  marker="o", lw=1.0, label=_tau_label(tau))
    ax.set_xlabel("cells")
    ax.set_ylabel("L1 vs reference")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(spec.title or "grid convergence")
    return _save(fig, spec.output)


def _render_decay(spec: FigureSpec):
    manifest = json.loads(Path(spec.inputs[0]).read_text())
    pts = [
        (entry["tau"], entry["diagnostics"]["max_abs_v"])
        for entry in manifest["snapshots"]
        if entry["tau"] > 0.0 and entry["diagnostics"]["max_abs_v"] > 0.0
    ]
    if len(pts) < 2:
        raise ValueError(f"{spec.inputs[0]}: not enough positive samples for a decay plot")
    taus = np.array([p[0] for p in pts])
    mags = np.array([p[1] for p in pts])
    slope = np.polyfit(np.log(taus), np.log(mags), 1)[0]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.loglog(taus, mags, marker="o", lw=1.0, color="tab:blue")
    ax.set_xlabel("tau")
    ax.set_ylabel("max |v|")
    ax.set_title(spec.title or f"amplitude decay, fitted slope {slope:.3f}")
    return _save(fig, spec.output)


_RENDERERS = {
    "line1d": _render_line1d,
    "overlay1d": _render_overlay1d,
    "contour2d": _render_contour2d,
    "surface3d": _render_surface3d,
    "convergence": _render_convergence,
    "decay_loglog": _render_decay,
}


def render(spec: FigureSpec) -> Path:
    """Render one figure; returns the written image path."""
    return _RENDERERS[spec.kind](spec)


def render_suite(manifest_dir, out_dir=None) -> list[Path]:
    """Render a run directory: one image per snapshot plus summary figures.

    Writes an ``index.json`` listing the produced images and returns their
    paths.  1D snapshots become v/w line panels, 2D snapshots contour plots;
    expanding runs with enough checkpoints get a decay summary, and a
    ``convergence.csv`` in the directory gets a convergence summary.
    """
    manifest_dir = Path(manifest_dir)
    manifest_path = manifest_dir / "manifest.json"
    if not manifest_path.exists():
        raise FileNotFoundError(f"no manifest.json in {manifest_dir}")
    manifest = json.loads(manifest_path.read_text())
    out = Path(out_dir) if out_dir else manifest_dir / "figures"
    out.mkdir(parents=True, exist_ok=True)

    outputs: list[Path] = []
    dimension = manifest.get("config", {}).get("dimension", 1)
    for i, entry in enumerate(manifest.get("snapshots", [])):
        csv_path = manifest_dir / entry["file"]
        image = out / f"snapshot_{i:03d}.png"
        kind = "line1d" if dimension == 1 else "contour2d"
        outputs.append(render(FigureSpec(kind=kind, inputs=(str(csv_path),),
                                         output=str(image))))

    regime = manifest.get("config", {}).get("regime")
    decay_pts = [
        e for e in manifest.get("snapshots", [])
        if e["tau"] > 0.0 and e["diagnostics"]["max_abs_v"] > 0.0
    ]
    if regime == "expanding" and len(decay_pts) >= 3:
        outputs.append(render(FigureSpec(
            kind="decay_loglog", inputs=(str(manifest_path),),
            output=str(out / "decay_loglog.png"))))

    convergence = manifest_dir / "convergence.csv"
    if convergence.exists():
        outputs.append(render(FigureSpec(
            kind="convergence", inputs=(str(convergence),),
            output=str(out / "convergence.png"))))

    index = out / "index.json"
    index.write_text(json.dumps(
        {"images": sorted(p.name for p in outputs)}, indent=2) + "\n")
    outputs.append(index)
    return outputs


__all__ = ["FigureSpec", "load_spec", "render", "render_suite", "KINDS"]
