"""Parameters, stationary state, tilt, and single-mode energies."""

import math

import pytest

from dlpad.model import (
    ModelParams,
    Sector,
    critical_dispersion,
    critical_point,
    dispersion,
    stationary_density,
    tilted_params,
    trig_pair,
)


class TestModelParams:
    def test_from_nu_normalization(self):
        p = ModelParams.from_nu(0.5)
        assert p.w == 0.5
        assert p.mu == 0.25
        assert p.nu == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("nu", [-0.1, 1.0, 1.5])
    def test_from_nu_rejects_out_of_range(self, nu):
        with pytest.raises(ValueError):
            ModelParams.from_nu(nu)

    @pytest.mark.parametrize("w,mu", [(0.0, 0.1), (-1.0, 0.1), (0.5, 0.0), (0.5, -0.2)])
    def test_rates_must_be_positive(self, w, mu):
        with pytest.raises(ValueError):
            ModelParams(w=w, mu=mu)

    def test_nu_consistency_guard(self):
        with pytest.raises(ValueError):
            ModelParams(w=0.5, mu=0.25, nu=0.3)

    def test_explicit_rates_derive_nu(self):
        p = ModelParams(w=2.0, mu=0.5)
        assert p.nu == pytest.approx(0.75, abs=1e-15)


class TestStationaryDensity:
    def test_value_at_half(self):
        # 1/(1 + sqrt(1 + 2w/mu)) with 2w/mu = 4
        p = ModelParams.from_nu(0.5)
        assert stationary_density(p) == pytest.approx(1.0 / (1.0 + math.sqrt(5.0)), abs=1e-15)

    @pytest.mark.parametrize("nu", [0.05, 0.3, 0.5, 0.9, 0.99])
    def test_density_in_lower_half(self, nu):
        rho = stationary_density(ModelParams.from_nu(nu))
        assert 0.0 < rho < 0.5

    @pytest.mark.parametrize("nu", [0.1, 0.5, 0.9])
    def test_detailed_balance_between_pair_states(self, nu):
        # deposition flux from an empty pair balances the doubly-occupied flips
        p = ModelParams.from_nu(nu)
        rho = stationary_density(p)
        assert p.mu * (1 - rho) ** 2 == pytest.approx((p.mu + 2 * p.w) * rho**2, rel=1e-14)


class TestCriticalPoint:
    @pytest.mark.parametrize("nu", [0.1, 0.5, 0.9])
    def test_log_of_reduced_rate(self, nu):
        p = ModelParams.from_nu(nu)
        assert critical_point(p) == pytest.approx(math.log(nu), abs=1e-15)

    def test_requires_mu_below_w(self):
        with pytest.raises(ValueError):
            critical_point(ModelParams(w=0.5, mu=0.5))
        with pytest.raises(ValueError):
            critical_point(ModelParams(w=0.5, mu=0.7))

    @pytest.mark.parametrize("nu", [0.2, 0.5, 0.9])
    def test_transverse_field_is_one_at_critical_tilt(self, nu):
        p = ModelParams.from_nu(nu)
        tp = tilted_params(p, critical_point(p))
        assert tp.h == pytest.approx(1.0, abs=1e-14)


class TestTiltedParams:
    def test_untilted_values(self):
        p = ModelParams.from_nu(0.5)
        tp = tilted_params(p, 0.0)
        assert tp.J == pytest.approx(p.w + p.mu, abs=1e-15)
        assert tp.s == 0.0

    @pytest.mark.parametrize("s", [-0.4, 0.0, 0.3])
    def test_parameter_identities(self, s):
        # J = w e^s + mu, J^2 gamma^2 = mu (2 w e^s + mu), h = w(w+mu)/J... via defs
        p = ModelParams.from_nu(0.7)
        tp = tilted_params(p, s)
        es = math.exp(s)
        assert tp.J == pytest.approx(p.w * es + p.mu, rel=1e-15)
        assert (tp.J * tp.gamma) ** 2 == pytest.approx(p.mu * (2 * p.w * es + p.mu), rel=1e-13)


class TestDispersion:
    @pytest.mark.parametrize("L,r", [(8, 0), (8, 3), (12, 5)])
    def test_zero_deposition_reduces_to_pure_sine(self, L, r):
        # at nu = 0 the critical mode energy collapses to sin(pi(2r+1)/(2L))
        assert critical_dispersion(0.0, L, r) == pytest.approx(trig_pair(L, r).s, abs=1e-15)

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    @pytest.mark.parametrize("L", [6, 10])
    def test_critical_dispersion_matches_full_formula(self, nu, L):
        p = ModelParams.from_nu(nu)
        sc = critical_point(p)
        for r in range(L):
            # closed form and general formula take different float routes
            full = dispersion(p, sc, L, r, Sector.EVEN)
            assert critical_dispersion(nu, L, r) == pytest.approx(full, abs=1e-14)

    @pytest.mark.parametrize("s", [-0.5, 0.0, 0.4])
    def test_even_sector_mode_symmetry(self, s):
        p = ModelParams.from_nu(0.6)
        L = 10
        for r in range(L):
            a = dispersion(p, s, L, r, Sector.EVEN)
            b = dispersion(p, s, L, L - 1 - r, Sector.EVEN)
            assert a == pytest.approx(b, rel=1e-14)

    @pytest.mark.parametrize("s", [-0.5, 0.0, 0.4])
    def test_odd_sector_mode_symmetry(self, s):
        p = ModelParams.from_nu(0.6)
        L = 10
        for r in range(1, L):
            a = dispersion(p, s, L, r, Sector.ODD)
            b = dispersion(p, s, L, (L - r) % L, Sector.ODD)
            assert a == pytest.approx(b, rel=1e-14)

    @pytest.mark.parametrize("s", [-1.0, math.log(0.5), 0.0, 0.7])
    def test_odd_sector_zero_mode_follows_hop_amplitude(self, s):
        p = ModelParams.from_nu(0.5)
        tp = tilted_params(p, s)
        assert dispersion(p, s, 8, 0, Sector.ODD) == pytest.approx(tp.J, rel=1e-15)

    @pytest.mark.parametrize("L,r", [(7, 0), (8, -1), (8, 8), (0, 0)])
    def test_domain_validation(self, L, r):
        with pytest.raises(ValueError):
            dispersion(ModelParams.from_nu(0.5), 0.0, L, r)

    def test_critical_dispersion_accepts_closed_interval(self):
        # regular at both endpoints of the deposition-parameter range
        assert critical_dispersion(1.0, 2, 0) == pytest.approx(0.5, abs=1e-15)
        assert critical_dispersion(0.0, 2, 0) == pytest.approx(math.sin(math.pi / 4), abs=1e-15)
        with pytest.raises(ValueError):
            critical_dispersion(1.2, 4, 0)


class TestSector:
    def test_parse(self):
        assert Sector.parse("even") is Sector.EVEN
        assert Sector.parse("ODD") is Sector.ODD
        with pytest.raises(ValueError):
            Sector.parse("both")
