import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hshift.errors import DomainError
from hshift.kinetics import (
    G2S_EXPERIMENTAL_BOUND,
    TRAJECTORY_COLUMNS,
    KineticsParams,
    SurfaceDensities,
    adsorption_ratio,
    alpha_ratio,
    closure_deviation,
    integrate_kinetics,
    isotherm_alpha,
    kab_rate,
    na_rate,
    rate_terms,
    relaxation_time,
    steady_state_intercept,
    steady_state_numeric,
    steady_state_sigma_as,
    steady_state_slope,
)


class TestIsotherm:
    def test_default_ratio(self):
        r = adsorption_ratio(1.14, 0.07, 0.2)
        assert r == pytest.approx(math.exp(1.14 * (1 / 0.07 - 1 / 0.2)), rel=1e-15)
        assert r == pytest.approx(3.96e4, rel=2e-3)

    def test_equal_temperatures(self):
        assert adsorption_ratio(1.14, 0.15, 0.15) == 1.0

    def test_helium3_energy(self):
        assert adsorption_ratio(0.40, 0.07, 0.2) == pytest.approx(41.1, rel=2e-3)

    def test_errors(self):
        with pytest.raises(DomainError):
            adsorption_ratio(1.14, 0.3, 0.2)
        with pytest.raises(DomainError):
            adsorption_ratio(1.14, 0.0, 0.2)


class TestRates:
    def test_kab_law(self):
        assert kab_rate(2.8e-9, 0.07) == pytest.approx(5e-11, rel=0.05)
        assert kab_rate(2.8e-9, 0.07) == pytest.approx(5.186e-11, rel=1e-3)
        assert kab_rate(2.8e-9, 1.0) == 2.8e-9
        assert kab_rate(2.8e-9, 0.28) / kab_rate(2.8e-9, 0.07) == pytest.approx(8.0, rel=1e-14)

    def test_kabs_none_uses_law(self):
        p = KineticsParams(K_abs=None)
        assert p.kab_spot == kab_rate(p.Kab_prefactor, p.T_spot)
        assert KineticsParams().kab_spot == 5e-11

    def test_alpha(self):
        p = KineticsParams()
        assert isotherm_alpha(p) == pytest.approx(312.5 / p.isotherm, rel=1e-14)
        assert isotherm_alpha(p) == pytest.approx(7.9e-3, rel=0.01)
        warm = KineticsParams(T_walls=0.12)
        assert warm.isotherm == pytest.approx(886, rel=2e-3)
        assert isotherm_alpha(warm) == pytest.approx(0.35, rel=0.02)
        eq = KineticsParams(wall_area=1.0, spot_area=1.0)
        assert alpha_ratio(eq, SurfaceDensities(0, 5e11, 0, 5e11)) == 1.0

    def test_alpha_matches_isotherm_densities(self, kin):
        d = SurfaceDensities.from_isotherm(kin, 1e12)
        assert alpha_ratio(kin, d) == pytest.approx(isotherm_alpha(kin), rel=1e-14)
        with pytest.raises(DomainError):
            alpha_ratio(kin, SurfaceDensities(0, 1, 0, 0))

    def test_na_rate_zero(self, kin):
        assert na_rate(kin, SurfaceDensities(0, 0, 0, 0)) == 0.0

    def test_na_rate_spot_only(self):
        p = KineticsParams(wall_area=0.0, G1=0.0)
        d = SurfaceDensities(0, 0, 0, 1e12)
        assert na_rate(p, d) == pytest.approx(7.68e10, rel=1e-14)

    def test_rate_terms_sum(self, kin):
        d = SurfaceDensities(1e5, 3e7, 4e9, 1e12)
        assert sum(rate_terms(kin, d)) == pytest.approx(na_rate(kin, d), rel=1e-14)

    def test_param_validation(self):
        with pytest.raises(DomainError, match="surface_kinetics"):
            KineticsParams(G1=-1.0)
        with pytest.raises(DomainError):
            KineticsParams(T_spot=0.3)
        with pytest.raises(DomainError):
            KineticsParams(E_a=0.0)
        with pytest.raises(DomainError):
            SurfaceDensities(-1, 0, 0, 0)


class TestSteadyState:
    def test_worked_example(self):
        p = KineticsParams()
        val = steady_state_sigma_as(p, 1e12, alpha=0.01)
        assert val == pytest.approx(2.02e9 + 2.8e9, rel=1e-12)

    def test_default_slope(self, kin):
        assert steady_state_slope(kin) == pytest.approx(2.8e-3, rel=1e-12)
        assert steady_state_slope(kin) == pytest.approx(3e-3, rel=0.1)

    def test_zero_g2s_is_flat(self):
        p = KineticsParams(G2s=0.0)
        assert steady_state_sigma_as(p, 1e11) == steady_state_sigma_as(p, 1e13)

    def test_intercept_range(self, kin):
        for alpha in np.linspace(0.008, 0.1, 12):
            assert 1.9e9 <= steady_state_intercept(kin, alpha) <= 2.3e9

    def test_affine_in_sigma_bs(self, kin):
        x = np.linspace(1e11, 1e13, 50)
        y = np.array([steady_state_sigma_as(kin, v) for v in x])
        coef = np.polyfit(x, y, 1)
        resid = y - np.polyval(coef, x)
        assert np.max(np.abs(resid)) <= 1e-12 * np.max(np.abs(y))

    def test_residual_of_reduced_equation(self):
        # with the reductions used by the closed form, na_rate vanishes at sigma_a = 0
        p = KineticsParams()
        sbs = 1e12
        sas = steady_state_sigma_as(p, sbs)
        d = SurfaceDensities(0.0, sbs / p.isotherm, sas, sbs)
        terms = rate_terms(p, d)
        assert abs(na_rate(p, d)) <= 1e-9 * max(abs(t) for t in terms)

    def test_errors(self, kin):
        with pytest.raises(DomainError):
            steady_state_sigma_as(kin, 0.0)
        with pytest.raises(DomainError):
            steady_state_sigma_as(KineticsParams(K_abs=0.0), 1e12)
        with pytest.raises(DomainError):
            steady_state_slope(KineticsParams(K_abs=0.0))


class TestNumeric:
    def test_close_to_analytic(self, kin):
        num = steady_state_numeric(kin, 1e12)
        assert num == pytest.approx(4.82e9, rel=0.05)
        assert abs(closure_deviation(kin, 1e12)) < 1e-5

    def test_root_residual(self, kin):
        num = steady_state_numeric(kin, 1e12)
        d = SurfaceDensities.from_isotherm(kin, 1e12, num)
        scale = max(abs(t) for t in rate_terms(kin, d))
        assert abs(na_rate(kin, d)) <= 1e-9 * scale

    def test_no_sources(self):
        p = KineticsParams(G1=0.0, G1s=0.0, G2s=0.0)
        assert steady_state_numeric(p, 1e12) == 0.0

    def test_doubling_g2s(self, kin):
        base = steady_state_numeric(kin, 1e12) - steady_state_numeric(kin.with_overrides(G2s=0.0), 1e12)
        twice = kin.with_overrides(G2s=2 * kin.G2s)
        dbl = steady_state_numeric(twice, 1e12) - steady_state_numeric(kin.with_overrides(G2s=0.0), 1e12)
        assert dbl == pytest.approx(2 * base, rel=0.01)

    def test_no_sign_change_reports_bracket(self):
        p = KineticsParams(K_abs=0.0, Kab_prefactor=0.0)
        with pytest.raises(DomainError, match=r"bracket \[0, "):
            steady_state_numeric(p, 1e12)

    @settings(max_examples=40, deadline=None)
    @given(
        st.sampled_from(["G1", "G1s", "G2s", "Phi_a"]),
        st.floats(min_value=1.0, max_value=10.0),
        st.floats(min_value=1e10, max_value=1e14),
    )
    def test_monotone_in_sources(self, name, factor, sbs):
        p = KineticsParams(Phi_a=1e8)
        q = p.with_overrides(**{name: getattr(p, name) * factor})
        lo = steady_state_numeric(p, sbs)
        hi = steady_state_numeric(q, sbs)
        assert lo >= 0
        assert hi >= lo * (1 - 1e-9)

    def test_experimental_g2s_preset(self):
        p = KineticsParams(G2s=G2S_EXPERIMENTAL_BOUND)
        assert steady_state_slope(p) == pytest.approx(8e-3, rel=1e-12)


class TestIntegration:
    def test_relaxation_time(self, kin):
        tau = relaxation_time(kin, 1e12)
        # spot recombination dominates: 1/(K_abs sigma_bs) up to the wall bookkeeping
        assert tau == pytest.approx(1 / (5e-11 * 1e12), rel=0.02)

    def test_exact_exponential(self, kin):
        sbs = 1e12
        tau = relaxation_time(kin, sbs)
        ss = steady_state_numeric(kin, sbs)
        tr = integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, sbs), 12 * tau, tol=1e-8)
        exact = ss * (1 - np.exp(-tr.time / tau))
        assert np.max(np.abs(tr.sigma_as - exact)) <= 1e-6 * ss

    @pytest.mark.parametrize("tol, n_tau", [(1e-5, 10), (1e-6, 12)])
    def test_rises_monotonically_to_steady_state(self, kin, tol, n_tau):
        # the exact solution still lags by exp(-n_tau); 10 tol must exceed it
        sbs = 1e12
        tau = relaxation_time(kin, sbs)
        ss = steady_state_numeric(kin, sbs)
        tr = integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, sbs), n_tau * tau, tol)
        assert np.all(np.diff(tr.sigma_as) >= 0)
        assert abs(tr.final.sigma_as - ss) / ss <= 10 * tol
        assert abs(tr.final.sigma_as / steady_state_sigma_as(kin, sbs) - 1) <= 1e-3
        assert tr.time[-1] == pytest.approx(n_tau * tau, rel=1e-12)

    def test_fixed_point(self, kin):
        sbs = 1e12
        ss = steady_state_numeric(kin, sbs)
        tol = 1e-6
        tr = integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, sbs, ss), 1.0, tol)
        assert np.max(np.abs(tr.sigma_as / ss - 1)) <= tol

    def test_decay_from_above(self, kin):
        sbs = 1e12
        ss = steady_state_numeric(kin, sbs)
        tau = relaxation_time(kin, sbs)
        tr = integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, sbs, 10 * ss), 15 * tau, 1e-7)
        assert np.all(np.diff(tr.sigma_as) <= 0)
        assert tr.final.sigma_as == pytest.approx(ss, rel=1e-5)

    def test_wall_densities_follow_isotherm(self, kin):
        tr = integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, 1e12), 0.1)
        np.testing.assert_allclose(tr.sigma_a * kin.isotherm, tr.sigma_as, rtol=1e-14)
        assert np.all(tr.sigma_bs == 1e12)

    def test_step_underflow(self, kin):
        with pytest.raises(DomainError, match="step size fell below"):
            integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, 1e12), 1.0, tol=1e-6, h_min=1.0)

    def test_argument_checks(self, kin):
        d = SurfaceDensities.from_isotherm(kin, 1e12)
        with pytest.raises(DomainError):
            integrate_kinetics(kin, d, 0.0)
        with pytest.raises(DomainError):
            integrate_kinetics(kin, d, 1.0, tol=2.0)

    def test_csv_export(self, kin):
        tr = integrate_kinetics(kin, SurfaceDensities.from_isotherm(kin, 1e12), 0.05)
        lines = tr.to_csv().splitlines()
        assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
        assert len(lines) == len(tr) + 1
        first = lines[1].split(",")
        assert len(first) == 5
        assert float(lines[-1].split(",")[3]) == pytest.approx(tr.final.sigma_as, rel=1e-8)
