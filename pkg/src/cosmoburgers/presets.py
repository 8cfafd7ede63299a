"""Initial-condition presets for the experiment drivers."""

from __future__ import annotations

import math
import re

import numpy as np

PI = math.pi
DEFAULT_L_1D = PI
DEFAULT_L_2D = PI / math.sqrt(2.0)

_CONSTANT_RE = re.compile(r"^constant\(\s*(-?\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\s*\)$")


def step_profile(y):
    """Single-jump data: 0.8 on [0.666, 1.5), zero elsewhere."""
    y = np.asarray(y)
    return np.where((y >= 0.666) & (y < 1.5), 0.8, 0.0)


def sine_profile_a(y):
    """0.8 sin(5y) cos((pi y^3 - 3)/7)."""
    y = np.asarray(y)
    return 0.8 * np.sin(5.0 * y) * np.cos((np.pi * y ** 3 - 3.0) / 7.0)


def sine_profile_b(y):
    """0.16 sin(5y) cos((pi y^3 - 3)/7), the low-amplitude variant."""
    y = np.asarray(y)
    return 0.16 * np.sin(5.0 * y) * np.cos((np.pi * y ** 3 - 3.0) / 7.0)


def trig2d_profile(x, y):
    """Multi-mode trigonometric 2D data on [0, pi/sqrt(2)]^2."""
    x = np.asarray(x)
    y = np.asarray(y)
    c = math.sqrt(2.0) * np.pi
    return (
        np.sin(4 * c * x - 3 * c * y)
        + np.cos(c * x + 3 * c * y)
        + np.sin(3 * c * x - 5 * c * y)
        + np.sin(5 * c * x + 3 * c * y)
        - np.cos(2 * c * x + 2 * c * y)
    ) / 8.0


PRESET_DIMENSION = {
    "step1d": 1,
    "sine1d_a": 1,
    "sine1d_b": 1,
    "paper2d": 2,
}

_PROFILES_1D = {
    "step1d": step_profile,
    "sine1d_a": sine_profile_a,
    "sine1d_b": sine_profile_b,
}


def parse_constant(name: str) -> float | None:
    """Return v0 for 'constant(v0)' specs, else None."""
    m = _CONSTANT_RE.match(name.strip())
    return float(m.group(1)) if m else None


def is_known(name: str) -> bool:
    return (
        name in PRESET_DIMENSION
        or name == "zero"
        or parse_constant(name) is not None
        or name.startswith("table:")
    )


def initial_values_1d(name: str, centers: np.ndarray) -> np.ndarray:
    if name in _PROFILES_1D:
        return _PROFILES_1D[name](centers)
    if name == "zero":
        return np.zeros_like(centers)
    v0 = parse_constant(name)
    if v0 is not None:
        return np.full_like(centers, v0)
    raise ValueError(f"unknown 1D initial condition {name!r}")


def initial_values_2d(name: str, centers_x: np.ndarray, centers_y: np.ndarray) -> np.ndarray:
    if name == "paper2d":
        return trig2d_profile(centers_x[:, None], centers_y[None, :])
    if name == "zero":
        return np.zeros((centers_x.size, centers_y.size))
    v0 = parse_constant(name)
    if v0 is not None:
        return np.full((centers_x.size, centers_y.size), v0)
    raise ValueError(f"unknown 2D initial condition {name!r}")


__all__ = [
    "DEFAULT_L_1D",
    "DEFAULT_L_2D",
    "PRESET_DIMENSION",
    "step_profile",
    "sine_profile_a",
    "sine_profile_b",
    "trig2d_profile",
    "parse_constant",
    "is_known",
    "initial_values_1d",
    "initial_values_2d",
]
