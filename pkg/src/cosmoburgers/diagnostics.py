"""Rescaled asymptotic fields, norms, decay fits, and shock diagnostics.

Functions here operate on snapshot fields (anything with ``.values`` and
``.tau``) or on plain arrays; they never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DiagnosticsRecord:
    tau: float
    max_abs_v: float
    overshoot: float
    jump_count: int | None = None
    tv: float | None = None
    tv_x: float | None = None
    tv_y: float | None = None
    l2_norm: float | None = None
    l1_vs_reference: float | None = None

    def as_dict(self) -> dict:
        return {
            "tau": self.tau,
            "max_abs_v": self.max_abs_v,
            "overshoot": self.overshoot,
            "jump_count": self.jump_count,
            "tv": self.tv,
            "tv_x": self.tv_x,
            "tv_y": self.tv_y,
            "l2_norm": self.l2_norm,
            "l1_vs_reference": self.l1_vs_reference,
        }


def _values(obj) -> np.ndarray:
    return np.asarray(getattr(obj, "values", obj), dtype=float)


def rescale_expanding(field, kappa: float):
    """Rescaled field w = tau^kappa * v on an expanding background."""
    if field.tau <= 0.0:
        raise ValueError("expanding rescaling needs tau > 0")
    w = field.tau ** kappa * np.asarray(field.values)
    return type(field)(w, field.tau)


def rescale_contracting(field, kappa: float):
    """Rescaled field w = sgn(v) (-tau)^kappa / sqrt(1 - v^2), tau < 0.

    Overshoot cells with |v| >= 1 would be complex-valued; they are mapped
    to NaN sentinels so norms can exclude rather than silently clamp them.
    """
    if field.tau >= 0.0:
        raise ValueError("contracting rescaling needs tau < 0")
    v = np.asarray(field.values)
    one_minus = 1.0 - v * v
    safe = np.where(one_minus > 0.0, one_minus, 1.0)
    w = np.where(
        one_minus > 0.0,
        np.sign(v) * (-field.tau) ** kappa / np.sqrt(safe),
        np.nan,
    )
    return type(field)(w, field.tau)


def block_average(fine: np.ndarray, coarse_shape) -> np.ndarray:
    """Conservative restriction of a fine field onto a coarser nested grid."""
    fine = np.asarray(fine, dtype=float)
    if np.isscalar(coarse_shape):
        coarse_shape = (int(coarse_shape),)
    coarse_shape = tuple(int(n) for n in coarse_shape)
    if len(coarse_shape) != fine.ndim:
        raise ValueError("coarse shape rank must match the field rank")
    for nf, nc in zip(fine.shape, coarse_shape):
        if nc <= 0 or nf % nc != 0:
            raise ValueError(f"coarse cell count {nc} must divide fine count {nf}")
    if fine.ndim == 1:
        r = fine.shape[0] // coarse_shape[0]
        return fine.reshape(coarse_shape[0], r).mean(axis=1)
    if fine.ndim == 2:
        rx = fine.shape[0] // coarse_shape[0]
        ry = fine.shape[1] // coarse_shape[1]
        return fine.reshape(coarse_shape[0], rx, coarse_shape[1], ry).mean(axis=(1, 3))
    raise ValueError("block_average supports 1D and 2D fields")


def _aligned(a, b) -> tuple[np.ndarray, np.ndarray]:
    va, vb = _values(a), _values(b)
    if va.shape == vb.shape:
        return va, vb
    if va.size > vb.size:
        return block_average(va, vb.shape), vb
    return va, block_average(vb, va.shape)


def norm_l1(a, b, cell_measure: float = 1.0, exclude_nonfinite: bool = False) -> float:
    """L1 distance sum(|a - b|) * cell_measure on the coarser common grid.

    When the shapes differ the finer field is block-averaged onto the
    coarser one (cell counts must divide); ``cell_measure`` is the coarse
    cell measure (dy in 1D, dx*dy in 2D).
    """
    va, vb = _aligned(a, b)
    diff = np.abs(va - vb)
    if exclude_nonfinite:
        diff = diff[np.isfinite(diff)]
    return float(np.sum(diff) * cell_measure)


def norm_l2(a, b, cell_measure: float = 1.0, exclude_nonfinite: bool = False) -> float:
    """L2 distance sqrt(sum((a-b)^2) * cell_measure), conventions as norm_l1."""
    va, vb = _aligned(a, b)
    diff = va - vb
    sq = diff * diff
    if exclude_nonfinite:
        sq = sq[np.isfinite(sq)]
    return float(np.sqrt(np.sum(sq) * cell_measure))


def decay_rate_fit(series) -> float:
    """Least-squares slope of log(max|v|) against log(tau).

    ``series`` is an iterable of (tau, max_abs_v) pairs with tau > 0 and
    max_abs_v > 0; at least three samples are required.
    """
    pts = [(float(t), float(m)) for t, m in series]
    if len(pts) < 3:
        raise ValueError("decay fit needs at least three samples")
    taus = np.array([p[0] for p in pts])
    mags = np.array([p[1] for p in pts])
    if np.any(taus <= 0.0):
        raise ValueError("decay fit needs tau > 0")
    if np.any(mags <= 0.0):
        raise ValueError("decay fit is undefined for a vanishing field")
    return float(np.polyfit(np.log(taus), np.log(mags), 1)[0])


def total_variation(values, periodic: bool = False) -> float:
    """Total variation sum|v_{j+1} - v_j| of a 1D field."""
    v = _values(values)
    tv = float(np.sum(np.abs(np.diff(v))))
    if periodic:
        tv += abs(float(v[0] - v[-1]))
    return tv


def total_variation_2d(values) -> tuple[float, float]:
    """Directional total variations (tv_x, tv_y) of a 2D field."""
    v = _values(values)
    tv_x = float(np.sum(np.abs(np.diff(v, axis=0))))
    tv_y = float(np.sum(np.abs(np.diff(v, axis=1))))
    return tv_x, tv_y


def jump_count(values, threshold_factor: float = 10.0) -> int:
    """Count interfaces whose jump exceeds threshold_factor * TV/J.

    A relative detection rule: an interface counts as a jump when its
    increment is much larger than the mean increment of the profile.
    """
    v = _values(values)
    d = np.abs(np.diff(v))
    tv = float(np.sum(d))
    if tv == 0.0:
        return 0
    threshold = threshold_factor * tv / v.size
    return int(np.sum(d > threshold))


def segment_affine_residuals(values, threshold_factor: float = 10.0) -> list[float]:
    """Max linear-fit residual on each segment between detected jumps.

    Splits the profile at the interfaces the jump_count rule flags and
    least-squares fits each piece; a profile that is piecewise affine up to
    its jumps returns residuals near zero.  Reported as a diagnostic only,
    never gated: there is no quantitative affinity criterion to enforce.
    """
    v = _values(values)
    d = np.abs(np.diff(v))
    tv = float(np.sum(d))
    cuts = np.where(d > threshold_factor * tv / v.size)[0] + 1 if tv > 0 else []
    bounds = [0, *[int(c) for c in cuts], v.size]
    residuals = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        seg = v[a:b]
        if seg.size < 3:
            residuals.append(0.0)
            continue
        x = np.arange(seg.size, dtype=float)
        fit = np.polyval(np.polyfit(x, seg, 1), x)
        residuals.append(float(np.max(np.abs(seg - fit))))
    return residuals


def diagonal_extract(field, grid) -> tuple[np.ndarray, np.ndarray]:
    """Profile v_{j,j} along x = y with arc-length coordinate s = j*dx*sqrt(2)."""
    v = _values(field)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise ValueError("diagonal extraction needs a square grid")
    if grid.Jx != grid.Jy:
        raise ValueError("diagonal extraction needs Jx == Jy")
    s = np.arange(v.shape[0]) * grid.dx * np.sqrt(2.0)
    return s, np.diagonal(v).copy()


__all__ = [
    "DiagnosticsRecord",
    "rescale_expanding",
    "rescale_contracting",
    "block_average",
    "norm_l1",
    "norm_l2",
    "decay_rate_fit",
    "total_variation",
    "total_variation_2d",
    "jump_count",
    "segment_affine_residuals",
    "diagonal_extract",
]
