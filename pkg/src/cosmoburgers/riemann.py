"""Godunov interface fluxes for scalar conservation laws.

All functions accept scalars or numpy arrays of left/right trace values and
evaluate elementwise; scalars in, float out.
"""

from __future__ import annotations

import numpy as np

from .model import ScalarFlux


def godunov_convex(v_left, v_right, flux, flux_prime=None):
    """Exact Godunov flux for a convex flux with f(0) = f'(0) = 0.

    Shock branch (v_l > v_r): f(v_l) when f(v_r) - f(v_l) <= 0, else f(v_r);
    the tie picks the first branch (both agree there).  Rarefaction branch
    (v_l <= v_r): f(v_l) when f'(v_l) > 0, f(v_r) when f'(v_r) < 0, else the
    sonic value f(0).  When ``flux_prime`` is omitted the sign of v is used,
    which equals the sign of f' for any convex flux normalized as above.
    """
    vl = np.asarray(v_left, dtype=float)
    vr = np.asarray(v_right, dtype=float)
    fl = flux(vl)
    fr = flux(vr)
    f0 = flux(np.float64(0.0))
    if flux_prime is None:
        dl, dr = vl, vr
    else:
        dl, dr = flux_prime(vl), flux_prime(vr)
    shock = np.where(fr - fl <= 0.0, fl, fr)
    raref = np.where(dl > 0.0, fl, np.where(dr < 0.0, fr, f0))
    out = np.where(vl > vr, shock, raref)
    return float(out) if out.ndim == 0 else out


def godunov_general(v_left, v_right, flux, critical_points=()):
    """General scalar Godunov flux via the candidate-extremum formula.

    min of the flux over [v_l, v_r] when v_l <= v_r, max over [v_r, v_l]
    otherwise, with the extremum taken over the endpoints plus the supplied
    stationary points of the flux that fall strictly inside the interval.
    Exact whenever ``critical_points`` contains every root of the derivative.
    """
    vl = np.asarray(v_left, dtype=float)
    vr = np.asarray(v_right, dtype=float)
    lo = np.minimum(vl, vr)
    hi = np.maximum(vl, vr)
    fl = flux(vl)
    fr = flux(vr)
    fmin = np.minimum(fl, fr)
    fmax = np.maximum(fl, fr)
    for c in critical_points:
        inside = (lo < c) & (c < hi)
        if not np.any(inside):
            continue
        fc = flux(np.float64(c))
        fmin = np.where(inside, np.minimum(fmin, fc), fmin)
        fmax = np.where(inside, np.maximum(fmax, fc), fmax)
    out = np.where(vl <= vr, fmin, fmax)
    return float(out) if out.ndim == 0 else out


def interface_flux(flux: ScalarFlux, v_left, v_right):
    """Godunov flux for a ScalarFlux, picking the convex fast path when valid."""
    if flux.convex:
        return godunov_convex(v_left, v_right, flux.value, flux.prime)
    return godunov_general(v_left, v_right, flux.value, flux.critical_points)


__all__ = ["godunov_convex", "godunov_general", "interface_flux"]
