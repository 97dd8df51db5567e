"""Universal growth constants, scaling functions, and their resummation identities."""

import math

import pytest

from dlpad.asymptotics import (
    CENTRAL_CHARGE,
    CUMULANT_SERIES_CALIBRATION,
    alpha_coefficient,
    beta_coefficient,
    cumulant_report,
    finite_scaling_curve,
    g_scaling,
    h_scaling,
    k0_scaled,
    k0_tilde,
    kappa0_star,
    kappa1_star,
    kappa_star,
    limit_scaling_curve,
    skewness_asymptotic,
    sound_velocity,
    universal_coeffs,
    variance_slope,
)
from dlpad.cgf import critical_cgf, critical_cumulant, mean_activity
from dlpad.combinatorics import zeta_odd
from dlpad.model import ModelParams, critical_point

NUS = [0.3, 0.5, 0.9]

# reference values, frozen from a 30-digit evaluation of the closed forms
KAPPA0_STAR = {0.3: -0.223062774635121564, 0.5: -0.141002218955770642, 0.9: -0.015214485260277025}
KAPPA1_STAR = {0.3: 0.077346015914368123, 0.5: 0.108997781044229360, 0.9: 0.099144317452586194}
VARIANCE_SLOPE_09 = 0.295752449355292771


def _richardson_l2(f, L):
    # removes the L^-2 and L^-4 corrections from f(L), f(2L), f(4L)
    g1 = (4.0 * f(2 * L) - f(L)) / 3.0
    g2 = (4.0 * f(4 * L) - f(2 * L)) / 3.0
    return (16.0 * g2 - g1) / 15.0


class TestLimitConstants:
    @pytest.mark.parametrize("nu", NUS)
    def test_kappa0_frozen_value(self, nu):
        assert kappa0_star(nu) == pytest.approx(KAPPA0_STAR[nu], rel=1e-13)

    @pytest.mark.parametrize("nu", NUS)
    def test_kappa1_frozen_value(self, nu):
        assert kappa1_star(nu) == pytest.approx(KAPPA1_STAR[nu], rel=1e-13)

    def test_variance_slope_frozen_value(self):
        assert variance_slope(0.9) == pytest.approx(VARIANCE_SLOPE_09, rel=1e-13)

    @pytest.mark.parametrize("nu", NUS)
    def test_kappa0_is_extrapolated_critical_cgf(self, nu):
        # the exact mode sums converge as kappa*_0 + O(L^-2); three-point
        # elimination of the power corrections must land on the closed form
        R = _richardson_l2(lambda L: critical_cgf(nu, L), 256)
        assert R == pytest.approx(kappa0_star(nu), abs=1e-12)

    @pytest.mark.parametrize("nu", NUS)
    def test_kappa1_is_extrapolated_mean_activity(self, nu):
        p = ModelParams.from_nu(nu)
        sc = critical_point(p)
        R = _richardson_l2(lambda L: mean_activity(p, sc, L), 256)
        assert R == pytest.approx(kappa1_star(nu), abs=1e-12)

    def test_kappa0_endpoints(self):
        assert kappa0_star(0.0) == pytest.approx(2.0 / math.pi - 1.0, abs=1e-12)
        assert kappa0_star(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_kappa1_series_branch_is_continuous(self):
        # the jump across the series/closed-form switch is at most the slope
        # (~1/pi) times the probe separation
        eps = 1e-9
        assert abs(kappa1_star(1e-3 + eps) - kappa1_star(1e-3 - eps)) < 1e-8

    def test_kappa0_series_branch_is_continuous(self):
        eps = 1e-9
        assert abs(kappa0_star(1e-4 + eps) - kappa0_star(1e-4 - eps)) < 1e-8

    @pytest.mark.parametrize("nu", NUS)
    def test_sound_velocity(self, nu):
        assert sound_velocity(nu) == pytest.approx(1.0 / math.sqrt(1.0 - nu * nu), rel=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            kappa0_star(1.5)
        with pytest.raises(ValueError):
            kappa1_star(1.0)
        with pytest.raises(ValueError):
            sound_velocity(-0.1)


class TestGrowthConstants:
    def test_published_normalization_constants(self):
        assert CUMULANT_SERIES_CALIBRATION == 2.0
        assert CENTRAL_CHARGE == 0.5

    def test_alpha_values(self):
        assert alpha_coefficient(1) == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-15)
        assert alpha_coefficient(2) == pytest.approx(
            (7.0 / 8.0) * zeta_odd(2) / math.pi**3, rel=1e-14
        )

    @pytest.mark.parametrize("nu", NUS)
    def test_beta_low_orders(self, nu):
        one = 1.0 - nu * nu
        assert beta_coefficient(0, nu) == pytest.approx(math.sqrt(one) / 2.0, rel=1e-14)
        assert beta_coefficient(1, nu) == pytest.approx(
            nu * (1.0 - 2.0 * nu) / (4.0 * math.sqrt(one)), rel=1e-14, abs=1e-16
        )
        assert beta_coefficient(4, nu) == pytest.approx(-(nu**4) / (16.0 * one**1.5), rel=1e-14)

    @pytest.mark.parametrize("nu", NUS)
    def test_variance_slope_is_second_growth_constant(self, nu):
        assert kappa_star(2, nu) == pytest.approx(variance_slope(nu), rel=1e-14)

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    def test_even_constants_alternate_in_sign(self, nu):
        signs = [math.copysign(1.0, kappa_star(n, nu)) for n in (4, 6, 8, 10)]
        assert signs == [-1.0, 1.0, -1.0, 1.0]

    def test_low_orders_dispatch_to_limits(self):
        assert kappa_star(0, 0.5) == kappa0_star(0.5)
        assert kappa_star(1, 0.5) == kappa1_star(0.5)

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    def test_variance_slope_matches_exact_log_growth(self, nu):
        dq = (critical_cumulant(nu, 1024, 2) - critical_cumulant(nu, 512, 2)) / math.log(2.0)
        assert dq == pytest.approx(variance_slope(nu), rel=1e-4)

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    @pytest.mark.parametrize("n", [4, 6])
    def test_even_constants_match_exact_power_growth(self, nu, n):
        ratio = critical_cumulant(nu, 2048, n) / 2048 ** (n - 2)
        assert ratio == pytest.approx(kappa_star(n, nu), rel=5e-3)

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    def test_odd_constant_matches_exact_subleading_growth(self, nu):
        # odd orders grow one power of L slower than the even ones
        ratio = critical_cumulant(nu, 4096, 5) / 4096**2
        assert ratio == pytest.approx(kappa_star(5, nu), rel=1e-4)


class TestSkewness:
    def test_decays_with_size_like_inverse_sqrt_log(self):
        a, b = skewness_asymptotic(0.5, 64), skewness_asymptotic(0.5, 4096)
        assert a > b > 0.0
        assert a / b == pytest.approx(math.sqrt(math.log(4096) / math.log(64)), rel=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            skewness_asymptotic(0.0, 64)
        with pytest.raises(ValueError):
            skewness_asymptotic(0.5, 1)


class TestHScaling:
    def test_even_and_zero(self):
        assert h_scaling(0.0) == 0.0
        for u in (0.5, 1.7, 3.0):
            assert h_scaling(-u) == h_scaling(u)
            assert h_scaling(u) < 0.0

    def test_small_argument_quartic_coefficient(self):
        # leading Taylor term is -7 zeta(3) u^4 / (64 pi^3)
        coeff = -7.0 * zeta_odd(2) / (64.0 * math.pi**3)
        assert h_scaling(0.01) / 0.01**4 == pytest.approx(coeff, rel=1e-5)

    def test_tolerance_is_honest(self):
        assert h_scaling(3.7, tol=1e-10) == pytest.approx(h_scaling(3.7, tol=1e-13), abs=1e-10)

    @pytest.mark.parametrize("nu", NUS)
    def test_resums_even_growth_constants(self, nu):
        # sqrt(1-nu^2) h(theta u) = sum kappa*_{2n} u^{2n} / (2n)!
        u = 0.5
        theta = nu * sound_velocity(nu)
        series = math.fsum(
            kappa_star(2 * n, nu) * u ** (2 * n) / math.factorial(2 * n) for n in range(2, 20)
        )
        lhs = math.sqrt(1.0 - nu * nu) * h_scaling(theta * u, tol=1e-13)
        assert lhs == pytest.approx(series, rel=1e-12)


class TestGScaling:
    def test_odd_and_zero(self):
        assert g_scaling(0.0, 0.5) == 0.0
        assert g_scaling(1.3, 0.0) == 0.0
        for u in (0.4, 2.1):
            assert g_scaling(-u, 0.7) == -g_scaling(u, 0.7)

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    def test_resums_odd_growth_constants(self, nu):
        u = 0.4
        series = math.fsum(
            kappa_star(2 * n + 1, nu) * u ** (2 * n + 1) / math.factorial(2 * n + 1)
            for n in range(2, 16)
        )
        assert g_scaling(u, nu, tol=1e-13) == pytest.approx(series, rel=1e-10)


class TestScaledCgf:
    @pytest.mark.parametrize("symmetrized", [True, False])
    def test_tilde_vanishes_at_origin(self, symmetrized):
        assert k0_tilde(0.5, 64, 0.0, symmetrized=symmetrized) == 0.0

    @pytest.mark.parametrize("nu", [0.3, 0.9])
    def test_origin_value_approaches_conformal_constant(self, nu):
        # L^2 xi (K_L(s_c) - kappa*_0) -> pi c / 6 with c = 1/2
        assert k0_scaled(nu, 1024, 0.0) == pytest.approx(math.pi / 12.0, rel=1e-4)

    def test_finite_size_curves_approach_limit(self):
        nu, u = 0.5, 2.0
        target = h_scaling(nu * sound_velocity(nu) * u)
        errs = [abs(k0_tilde(nu, L, u) - target) for L in (64, 128, 256)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 4e-3

    def test_symmetrization_removes_odd_contamination(self):
        # the one-sided curve carries the odd tower at O(1/L); the even part
        # sits much closer to the limit at the same L
        nu, L, u = 0.5, 128, 2.0
        target = h_scaling(nu * sound_velocity(nu) * u)
        sym = abs(k0_tilde(nu, L, u, symmetrized=True) - target)
        one = abs(k0_tilde(nu, L, u, symmetrized=False) - target)
        assert sym < 0.2 * one

    def test_domain(self):
        with pytest.raises(ValueError):
            k0_tilde(0.0, 64, 1.0)


class TestBundles:
    def test_universal_coeffs_shapes_and_identities(self):
        uc = universal_coeffs(0.9, n_max=8)
        assert len(uc.alphas) == 4
        assert len(uc.betas) == 9
        assert len(uc.kappa_stars) == 7
        assert uc.kappa_stars[0] == pytest.approx(variance_slope(0.9), rel=1e-14)
        assert uc.xi == sound_velocity(0.9)
        assert uc.central_charge == CENTRAL_CHARGE

    def test_universal_coeffs_domain(self):
        with pytest.raises(ValueError):
            universal_coeffs(0.5, n_max=1)

    def test_scaling_curves_sample_their_functions(self):
        us = (-1.0, 0.0, 2.0)
        fin = finite_scaling_curve(0.5, 32, us)
        lim = limit_scaling_curve(0.5, us)
        assert fin.kind == "finite" and fin.L == 32
        assert lim.kind == "limit" and lim.L is None
        theta = 0.5 * sound_velocity(0.5)
        for u, v in zip(fin.us, fin.values):
            assert v == k0_tilde(0.5, 32, u)
        for u, v in zip(lim.us, lim.values):
            assert v == h_scaling(theta * u)


class TestCumulantReport:
    def test_ratio_rules(self):
        L = 64
        r1 = cumulant_report(0.5, L, 1)
        r2 = cumulant_report(0.5, L, 2)
        r4 = cumulant_report(0.5, L, 4)
        r5 = cumulant_report(0.5, L, 5)
        assert r1.ratio == r1.kappa_c
        assert r2.ratio == pytest.approx(r2.kappa_c / math.log(L), rel=1e-15)
        assert r4.ratio == pytest.approx(r4.kappa_c / L**2, rel=1e-15)
        assert r5.ratio == pytest.approx(r5.kappa_c / L**3, rel=1e-15)
        assert r2.kappa_star == pytest.approx(variance_slope(0.5), rel=1e-14)
