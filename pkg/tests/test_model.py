import math

import numpy as np
import pytest

from cosmoburgers import (
    Background,
    FluxModel,
    Regime,
    cubic_flux,
    flux_eval,
    flux_prime,
    geometry_coefficient,
    homogeneous_solution,
    mixed_flux,
    quadratic_flux,
    scale_factor,
    source,
    t_of_tau,
    tau_of_t,
)

from conftest import ode_oracle


class TestBackground:
    def test_alpha_kappa_inverse(self):
        for kappa in (0.25, 1.0, 2.0, 4.0):
            bg = Background.expanding(kappa)
            alpha = bg.alpha
            assert alpha == pytest.approx(kappa / (1 + kappa), abs=1e-15)
            assert alpha / (1 - alpha) == pytest.approx(kappa, rel=1e-13)

    def test_regime_validation(self):
        with pytest.raises(ValueError):
            Background.expanding(2.0, tau0=-1.0)
        with pytest.raises(ValueError):
            Background.contracting(2.0, tau0=1.0)
        with pytest.raises(ValueError):
            Background.expanding(0.0)
        with pytest.raises(ValueError):
            Background(Regime.CONTRACTING, -1.0, -1.0)
        Background.flat(5.0)  # any tau0 is fine when flat


class TestScaleFactor:
    def test_unit_times(self):
        assert scale_factor(1.0, Background.expanding(7.0)) == 1.0
        assert scale_factor(-1.0, Background.contracting(2.0)) == 1.0

    def test_expanding_value(self):
        bg = Background.expanding(2.0)  # alpha = 2/3
        assert scale_factor(16.0, bg) == pytest.approx(
            math.exp((2.0 / 3.0) * math.log(16.0)), rel=1e-14
        )

    def test_flat_is_one(self):
        assert scale_factor(-3.7, Background.flat()) == 1.0

    def test_domain_rejection(self):
        with pytest.raises(ValueError):
            scale_factor(0.4, Background.expanding(2.0))
        with pytest.raises(ValueError):
            scale_factor(-2.0, Background.contracting(2.0))
        with pytest.raises(ValueError):
            scale_factor(0.0, Background.contracting(2.0))


class TestTimeMaps:
    def test_expanding_anchor(self):
        bg = Background.expanding(2.0)
        # tau(t=1) = 1/(1-alpha) = kappa + 1
        assert tau_of_t(1.0, bg) == pytest.approx(3.0, rel=1e-14)

    def test_contracting_anchor(self):
        bg = Background.contracting(2.0)
        assert tau_of_t(-1.0, bg) == pytest.approx(-3.0, rel=1e-14)

    @pytest.mark.parametrize("kappa,tau", [(2.0, 5.0), (0.5, 3.0), (4.0, 17.0)])
    def test_round_trip_expanding(self, kappa, tau):
        bg = Background.expanding(kappa)
        assert tau_of_t(t_of_tau(tau, bg), bg) == pytest.approx(tau, rel=1e-12)

    def test_round_trip_contracting(self):
        bg = Background.contracting(2.0)
        for tau in (-3.0, -1.0, -0.25):
            assert tau_of_t(t_of_tau(tau, bg), bg) == pytest.approx(tau, rel=1e-12)

    def test_flat_identity(self):
        bg = Background.flat()
        assert tau_of_t(0.3, bg) == 0.3
        assert t_of_tau(-2.0, bg) == -2.0

    def test_out_of_range_tau(self):
        with pytest.raises(ValueError):
            t_of_tau(1.0, Background.expanding(2.0))  # below kappa+1
        with pytest.raises(ValueError):
            t_of_tau(-10.0, Background.contracting(2.0))


class TestGeometryCoefficient:
    def test_values(self):
        assert geometry_coefficient(4.0, Background.expanding(2.0)) == 0.5
        assert geometry_coefficient(-0.5, Background.contracting(2.0, -1.0)) == -4.0
        assert geometry_coefficient(7.0, Background.flat()) == 0.0

    def test_singular_time(self):
        with pytest.raises(ValueError):
            geometry_coefficient(0.0, Background.expanding(2.0))


class TestFluxes:
    def test_quadratic_values(self):
        model = FluxModel.quadratic()
        f, g = flux_eval(model, 0.8)
        assert f == pytest.approx(0.32, abs=1e-15)
        assert g == pytest.approx(0.32, abs=1e-15)

    def test_cubic_values(self):
        model = FluxModel.cubic()
        _, g = flux_eval(model, -0.5)
        _, gp = flux_prime(model, -0.5)
        assert g == pytest.approx(-0.0625, abs=1e-15)
        assert gp == pytest.approx(0.375, abs=1e-15)

    def test_mixed_value(self):
        model = FluxModel.mixed(0.5)
        _, g = flux_eval(model, 0.5)
        assert g == pytest.approx(0.0625 + 0.5 / 24.0, abs=1e-15)  # 1/12

    def test_normalization_at_zero(self):
        for model in (FluxModel.quadratic(), FluxModel.cubic(), FluxModel.mixed(0.3)):
            assert flux_eval(model, 0.0) == (0.0, 0.0)
            assert flux_prime(model, 0.0) == (0.0, 0.0)

    def test_mixed_stationary_points(self):
        for beta in (0.25, 0.5, 0.75):
            g = mixed_flux(beta)
            assert set(g.critical_points) == {0.0, -(1 - beta) / beta}
            for c in g.critical_points:
                assert g.prime(c) == pytest.approx(0.0, abs=1e-15)

    def test_mixed_beta_validation(self):
        for beta in (0.0, 1.0, -0.2, 2.0):
            with pytest.raises(ValueError):
                mixed_flux(beta)

    def test_cubic_monotone_on_unit_interval(self):
        g = cubic_flux()
        v = np.linspace(-1.0, 1.0, 201)
        assert np.all(np.diff(g.value(v)) >= 0.0)

    def test_prime_matches_central_differences(self):
        h = 1e-5
        v = np.linspace(-0.95, 0.95, 39)
        for flux in (quadratic_flux(), cubic_flux(), mixed_flux(0.5)):
            fd = (flux.value(v + h) - flux.value(v - h)) / (2 * h)
            assert np.max(np.abs(fd - flux.prime(v))) < 1e-8


class TestSource:
    def test_roots_and_sign(self):
        for v in (-1.0, 0.0, 1.0):
            assert source(v) == 0.0
        v = np.linspace(-0.99, 0.99, 101)
        inside = np.abs(v) > 1e-12
        assert np.all(np.sign(source(v[inside])) == -np.sign(v[inside]))


class TestHomogeneousSolution:
    def test_expanding_value(self):
        bg = Background.expanding(2.0, 1.0)
        assert homogeneous_solution(0.8, 1.0, 2.0, bg) == pytest.approx(
            0.8 / math.sqrt(0.64 + 16 * 0.36), rel=1e-14
        )

    def test_contracting_value(self):
        bg = Background.contracting(2.0, -1.0)
        assert homogeneous_solution(0.8, -1.0, -0.5, bg) == pytest.approx(
            0.8 / math.sqrt(0.64 + 0.0625 * 0.36), rel=1e-14
        )

    def test_zero_is_fixed_point(self):
        for bg in (Background.expanding(2.0), Background.contracting(1.0), Background.flat()):
            taus = [2.0, 10.0] if bg.regime is Regime.EXPANDING else (
                [-0.5, -0.1] if bg.regime is Regime.CONTRACTING else [0.0, 1.0]
            )
            for tau in taus:
                assert homogeneous_solution(0.0, bg.tau0, tau, bg) == 0.0

    def test_rejects_unit_data(self):
        bg = Background.expanding(2.0)
        for v0 in (1.0, -1.0, 1.5):
            with pytest.raises(ValueError):
                homogeneous_solution(v0, 1.0, 2.0, bg)

    def test_bounds_sign_and_monotonicity(self):
        bg = Background.expanding(1.5, 1.0)
        taus = np.linspace(1.0, 50.0, 200)
        for v0 in (0.9, -0.5):
            v = homogeneous_solution(v0, 1.0, taus, bg)
            assert np.all(np.abs(v) < 1.0)
            assert np.all(np.sign(v) == np.sign(v0))
            assert np.all(np.diff(np.abs(v)) <= 0.0)
        bgc = Background.contracting(1.5, -1.0)
        taus = -np.geomspace(1.0, 1e-3, 50)
        for v0 in (0.9, -0.5):
            v = homogeneous_solution(v0, -1.0, taus, bgc)
            assert np.all(np.abs(v) < 1.0)
            assert np.all(np.diff(np.abs(v)) >= 0.0)

    @pytest.mark.parametrize("v0", [0.9, -0.9, 0.5, -0.5, 0.1, -0.1])
    def test_against_step_doubling_oracle_expanding(self, v0):
        bg = Background.expanding(2.0, 1.0)
        for tau in (2.0, 7.5):
            expected = ode_oracle(v0, 1.0, tau, 2.0)
            assert homogeneous_solution(v0, 1.0, tau, bg) == pytest.approx(
                expected, abs=1e-8
            )

    @pytest.mark.parametrize("v0", [0.9, -0.9, 0.5, -0.5, 0.1, -0.1])
    def test_against_step_doubling_oracle_contracting(self, v0):
        bg = Background.contracting(2.0, -1.0)
        for tau in (-0.5, -0.05):
            expected = ode_oracle(v0, -1.0, tau, 2.0)
            assert homogeneous_solution(v0, -1.0, tau, bg) == pytest.approx(
                expected, abs=1e-8
            )

    def test_general_tau0(self):
        # data given away from the +/-1 anchors still solves the same ODE
        bg = Background.expanding(2.0, 3.0)
        expected = ode_oracle(0.7, 3.0, 12.0, 2.0)
        assert homogeneous_solution(0.7, 3.0, 12.0, bg) == pytest.approx(expected, abs=1e-9)

    def test_expanding_decay_rate_constant(self):
        # tau^kappa v approaches a finite nonzero constant
        bg = Background.expanding(2.0, 1.0)
        w3 = 1e3 ** 2.0 * homogeneous_solution(0.8, 1.0, 1e3, bg)
        w4 = 1e4 ** 2.0 * homogeneous_solution(0.8, 1.0, 1e4, bg)
        assert w4 == pytest.approx(w3, rel=1e-4)
        assert w4 == pytest.approx(0.8 / math.sqrt(1 - 0.64), rel=1e-4)

    def test_contracting_approach_rate(self):
        # 1 - |v| scales like (-tau)^(2 kappa): log-log slope 2k within 2%
        kappa = 2.0
        bg = Background.contracting(kappa, -1.0)
        taus = -np.geomspace(1e-1, 1e-3, 9)
        gap = 1.0 - np.abs(homogeneous_solution(0.8, -1.0, taus, bg))
        slope = np.polyfit(np.log(-taus), np.log(gap), 1)[0]
        assert slope == pytest.approx(2 * kappa, rel=0.02)
