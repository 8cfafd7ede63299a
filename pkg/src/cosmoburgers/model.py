"""Background geometry, flux and source models, and exact homogeneous solutions.

The model is the scalar balance law

    v_tau + f(v)_x + g(v)_y = m(tau) h(v),      |v| < 1,

posed on an expanding, contracting, or flat background.  In the rescaled
time variable tau the whole geometry enters through the single coefficient
m(tau) = kappa/tau (zero on a flat background).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np


class Regime(Enum):
    EXPANDING = "expanding"
    CONTRACTING = "contracting"
    FLAT = "flat"


@dataclass(frozen=True)
class Background:
    """Geometry regime with stiffness exponent kappa.

    The scale factor is a(t) = |t|^alpha with alpha = kappa/(1+kappa);
    a flat background means a == 1 (kappa is ignored).  tau0 is the
    initial rescaled time: positive for expanding runs, negative for
    contracting ones.
    """

    regime: Regime
    kappa: float = 0.0
    tau0: float = 0.0

    def __post_init__(self):
        if self.regime is Regime.EXPANDING:
            if self.kappa <= 0.0:
                raise ValueError("expanding background requires kappa > 0")
            if self.tau0 <= 0.0:
                raise ValueError("expanding background requires tau0 > 0")
        elif self.regime is Regime.CONTRACTING:
            if self.kappa <= 0.0:
                raise ValueError("contracting background requires kappa > 0")
            if self.tau0 >= 0.0:
                raise ValueError("contracting background requires tau0 < 0")

    @property
    def alpha(self) -> float:
        """Expansion-rate exponent alpha = kappa/(1+kappa), in (0, 1)."""
        return self.kappa / (1.0 + self.kappa)

    @classmethod
    def expanding(cls, kappa: float, tau0: float = 1.0) -> "Background":
        return cls(Regime.EXPANDING, kappa, tau0)

    @classmethod
    def contracting(cls, kappa: float, tau0: float = -1.0) -> "Background":
        return cls(Regime.CONTRACTING, kappa, tau0)

    @classmethod
    def flat(cls, tau0: float = 0.0) -> "Background":
        return cls(Regime.FLAT, 0.0, tau0)


def _check_t_domain(t: float, bg: Background) -> None:
    if bg.regime is Regime.EXPANDING and t < 1.0:
        raise ValueError(f"expanding background is defined for t >= 1, got t={t}")
    if bg.regime is Regime.CONTRACTING and not (-1.0 <= t < 0.0):
        raise ValueError(f"contracting background is defined for -1 <= t < 0, got t={t}")


def scale_factor(t: float, bg: Background) -> float:
    """Scale factor a(t) = |t|^alpha (1 on a flat background)."""
    if bg.regime is Regime.FLAT:
        return 1.0
    _check_t_domain(t, bg)
    return abs(t) ** bg.alpha


def tau_of_t(t: float, bg: Background) -> float:
    """Map physical time t to the rescaled time tau (identity when flat)."""
    if bg.regime is Regime.FLAT:
        return t
    _check_t_domain(t, bg)
    a = bg.alpha
    if bg.regime is Regime.EXPANDING:
        return t ** (1.0 - a) / (1.0 - a)
    return -((-t) ** (1.0 - a)) / (1.0 - a)


def t_of_tau(tau: float, bg: Background) -> float:
    """Inverse of :func:`tau_of_t`."""
    if bg.regime is Regime.FLAT:
        return tau
    a = bg.alpha
    if bg.regime is Regime.EXPANDING:
        if tau < bg.kappa + 1.0:
            raise ValueError(f"expanding tau range is [kappa+1, inf), got tau={tau}")
        return ((1.0 - a) * tau) ** (1.0 / (1.0 - a))
    if not (-(bg.kappa + 1.0) <= tau < 0.0):
        raise ValueError(f"contracting tau range is [-kappa-1, 0), got tau={tau}")
    return -(((1.0 - a) * (-tau)) ** (1.0 / (1.0 - a)))


def geometry_coefficient(tau: float, bg: Background) -> float:
    """Coefficient m(tau) = kappa/tau multiplying the source (0 when flat)."""
    if bg.regime is Regime.FLAT:
        return 0.0
    if tau == 0.0:
        raise ValueError("geometry coefficient is singular at tau = 0")
    return bg.kappa / tau


def source(v):
    """Relativistic damping term h(v) = -v(1 - v^2), light speed scaled to 1."""
    return -v * (1.0 - v * v)


@dataclass(frozen=True)
class ScalarFlux:
    """A scalar flux together with its derivative and stationary points.

    ``critical_points`` are the real roots of the derivative; they form the
    interior candidate set for the general Godunov flux.  ``convex`` marks
    fluxes eligible for the closed-form convex Godunov expressions.
    """

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    prime: Callable[[np.ndarray], np.ndarray]
    critical_points: tuple[float, ...]
    convex: bool


def quadratic_flux() -> ScalarFlux:
    return ScalarFlux("quadratic", lambda v: 0.5 * v * v, lambda v: v, (0.0,), True)


def cubic_flux() -> ScalarFlux:
    """g(v) = v^3/2, monotone nondecreasing but not convex."""
    return ScalarFlux("cubic", lambda v: 0.5 * v * v * v, lambda v: 1.5 * v * v, (0.0,), False)


def mixed_flux(beta: float = 0.5) -> ScalarFlux:
    """g(v) = (1-beta) v^2/2 + beta v^3/3 with beta in (0, 1).

    g'(v) = (1-beta) v + beta v^2 vanishes at 0 and -(1-beta)/beta.
    """
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    return ScalarFlux(
        "mixed",
        lambda v: 0.5 * (1.0 - beta) * v * v + (beta / 3.0) * v * v * v,
        lambda v: (1.0 - beta) * v + beta * v * v,
        (0.0, -(1.0 - beta) / beta),
        False,
    )


@dataclass(frozen=True)
class FluxModel:
    """The flux pair (f, g).  f is always the quadratic v^2/2."""

    f: ScalarFlux
    g: ScalarFlux
    beta: float | None = None

    @classmethod
    def quadratic(cls) -> "FluxModel":
        return cls(quadratic_flux(), quadratic_flux())

    @classmethod
    def cubic(cls) -> "FluxModel":
        return cls(quadratic_flux(), cubic_flux())

    @classmethod
    def mixed(cls, beta: float = 0.5) -> "FluxModel":
        return cls(quadratic_flux(), mixed_flux(beta), beta)


def flux_eval(model: FluxModel, v):
    """Evaluate (f(v), g(v))."""
    return model.f.value(v), model.g.value(v)


def flux_prime(model: FluxModel, v):
    """Evaluate (f'(v), g'(v))."""
    return model.f.prime(v), model.g.prime(v)


def homogeneous_solution(v0: float, tau0: float, tau, bg: Background):
    """Exact spatially homogeneous solution through v(tau0) = v0.

    Solves dv/dtau = -m(tau) v (1 - v^2).  With m = kappa/tau the integral
    of m between tau0 and tau is kappa*log(|tau|/|tau0|), giving

        v(tau) = v0 / sqrt(v0^2 + (1 - v0^2) (|tau|/|tau0|)^(2 kappa)).

    On a flat background v stays equal to v0.  ``tau`` may be a scalar or
    an array of times on the same side of 0 as ``tau0``.
    """
    if not -1.0 < v0 < 1.0:
        raise ValueError(f"homogeneous data must satisfy |v0| < 1, got {v0}")
    tau_arr = np.asarray(tau, dtype=float)
    if bg.regime is Regime.FLAT:
        out = np.full_like(tau_arr, v0)
        return float(out) if out.ndim == 0 else out
    if bg.regime is Regime.EXPANDING:
        if tau0 <= 0.0 or np.any(tau_arr <= 0.0):
            raise ValueError("expanding homogeneous solution needs tau, tau0 > 0")
    else:
        if tau0 >= 0.0 or np.any(tau_arr >= 0.0):
            raise ValueError("contracting homogeneous solution needs tau, tau0 < 0")
    ratio = np.abs(tau_arr) / abs(tau0)
    out = v0 / np.sqrt(v0 * v0 + (1.0 - v0 * v0) * ratio ** (2.0 * bg.kappa))
    return float(out) if out.ndim == 0 else out


__all__ = [
    "Regime",
    "Background",
    "ScalarFlux",
    "FluxModel",
    "quadratic_flux",
    "cubic_flux",
    "mixed_flux",
    "flux_eval",
    "flux_prime",
    "source",
    "scale_factor",
    "tau_of_t",
    "t_of_tau",
    "geometry_coefficient",
    "homogeneous_solution",
]
