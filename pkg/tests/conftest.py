"""Shared independent oracles for the test suite.

These deliberately avoid the library code paths they are used to check:
the ODE oracle is a step-doubling fixed-step integrator, and the flux
extremum oracle is a dense-grid search.
"""

import numpy as np
import pytest


def damping_ode_rhs(tau, v, kappa):
    return -(kappa / tau) * v * (1.0 - v * v)


def ode_oracle(v0, tau0, tau1, kappa, tol=1e-11, n0=64, nmax=2 ** 21):
    """Step-doubling RK4 integration of dv/dtau = -(kappa/tau) v (1 - v^2)."""

    def run(n):
        h = (tau1 - tau0) / n
        v, t = v0, tau0
        for _ in range(n):
            k1 = damping_ode_rhs(t, v, kappa)
            k2 = damping_ode_rhs(t + h / 2, v + h / 2 * k1, kappa)
            k3 = damping_ode_rhs(t + h / 2, v + h / 2 * k2, kappa)
            k4 = damping_ode_rhs(t + h, v + h * k3, kappa)
            v += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t += h
        return v

    n = n0
    prev = run(n)
    while n < nmax:
        n *= 2
        cur = run(n)
        if abs(cur - prev) < tol:
            return cur
        prev = cur
    raise AssertionError("ODE oracle failed to converge")


def dense_extremum(flux, v_left, v_right, n=1_000_000):
    """Brute-force Godunov flux: dense-grid min (v_l <= v_r) or max (else)."""
    grid = np.linspace(min(v_left, v_right), max(v_left, v_right), n)
    vals = flux(grid)
    return float(np.min(vals)) if v_left <= v_right else float(np.max(vals))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
