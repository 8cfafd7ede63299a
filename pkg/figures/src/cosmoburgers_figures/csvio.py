"""Readers for the cosmoburgers snapshot CSV and table formats.

The contract (documented in the solver package's README): snapshot files
carry '#' header lines ``tau``, ``kappa``, ``regime``, ``grid``, ``scheme``,
then a column line (``y,v,w`` in 1D, ``x,y,v,w`` in 2D row-major), then
comma-separated numbers printed with 17 significant digits.  Parsing is a
lossless round trip for float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


class CsvFormatError(ValueError):
    """Malformed snapshot CSV; message names the offending file and line."""


@dataclass(frozen=True)
class SnapshotData:
    path: str
    tau: float
    kappa: float
    regime: str
    grid: dict
    scheme: str
    columns: dict

    @property
    def dimension(self) -> int:
        return 2 if "x" in self.columns else 1

    def grid_shape(self) -> tuple:
        if self.dimension == 1:
            return (int(self.grid["J"]),)
        return (int(self.grid["Jx"]), int(self.grid["Jy"]))

    def field_2d(self, name: str) -> np.ndarray:
        """Reshape a column of a 2D snapshot to (Jx, Jy), x-major order."""
        if self.dimension != 2:
            raise CsvFormatError(f"{self.path}: not a 2D snapshot")
        return self.columns[name].reshape(self.grid_shape())

    def axis_1d(self) -> np.ndarray:
        return self.columns["y"]

    def axes_2d(self) -> tuple[np.ndarray, np.ndarray]:
        x = self.field_2d("x")[:, 0]
        y = self.field_2d("y")[0, :]
        return x, y


def _parse_grid(text: str, path: str, lineno: int) -> dict:
    parts = text.split()
    if not parts or parts[0] not in ("1d", "2d"):
        raise CsvFormatError(f"{path}:{lineno}: unrecognized grid header {text!r}")
    out = {"dimension": 1 if parts[0] == "1d" else 2}
    for token in parts[1:]:
        if "=" not in token:
            raise CsvFormatError(f"{path}:{lineno}: bad grid token {token!r}")
        key, value = token.split("=", 1)
        out[key] = float(value) if key.startswith("L") else int(value)
    return out


def read_snapshot(path) -> SnapshotData:
    path = Path(path)
    lines = path.read_text().splitlines()
    meta: dict = {}
    body_start = 0
    for i, line in enumerate(lines):
        if not line.startswith("#"):
            body_start = i
            break
        stripped = line.lstrip("#").strip()
        if "=" not in stripped:
            raise CsvFormatError(f"{path}:{i + 1}: bad header line {line!r}")
        key, value = (p.strip() for p in stripped.split("=", 1))
        meta[key] = value
    else:
        raise CsvFormatError(f"{path}: no data after headers")
    for required in ("tau", "kappa", "regime", "grid", "scheme"):
        if required not in meta:
            raise CsvFormatError(f"{path}: missing required header {required!r}")

    names = [c.strip() for c in lines[body_start].split(",")]
    rows = lines[body_start + 1:]
    data = np.empty((len(rows), len(names)))
    for r, row in enumerate(rows):
        parts = row.split(",")
        if len(parts) != len(names):
            raise CsvFormatError(
                f"{path}:{body_start + 2 + r}: expected {len(names)} fields, got {len(parts)}"
            )
        for c, part in enumerate(parts):
            try:
                data[r, c] = float(part)
            except ValueError:
                raise CsvFormatError(
                    f"{path}:{body_start + 2 + r}: not a number: {part!r}"
                ) from None

    grid = _parse_grid(meta["grid"], str(path), 4)
    expected = grid.get("J") if grid["dimension"] == 1 else grid.get("Jx", 0) * grid.get("Jy", 0)
    if expected and len(rows) != expected:
        raise CsvFormatError(
            f"{path}: {len(rows)} data rows but the grid header promises {expected}"
        )
    return SnapshotData(
        path=str(path),
        tau=float(meta["tau"]),
        kappa=float(meta["kappa"]),
        regime=meta["regime"],
        grid=grid,
        scheme=meta["scheme"],
        columns={name: data[:, i].copy() for i, name in enumerate(names)},
    )


def read_table(path) -> dict:
    """Read a header+rows CSV (convergence / scheme-matrix) into columns."""
    path = Path(path)
    lines = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
    if not lines:
        raise CsvFormatError(f"{path}: empty table")
    names = [c.strip() for c in lines[0].split(",")]
    raw = [line.split(",") for line in lines[1:]]
    columns: dict = {name: [] for name in names}
    for r, parts in enumerate(raw):
        if len(parts) != len(names):
            raise CsvFormatError(f"{path}:{r + 2}: expected {len(names)} fields")
        for name, part in zip(names, parts):
            columns[name].append(part)
    out = {}
    for name, vals in columns.items():
        try:
            out[name] = np.array([float(v) for v in vals])
        except ValueError:
            out[name] = np.array(vals)
    return out


__all__ = ["CsvFormatError", "SnapshotData", "read_snapshot", "read_table"]
