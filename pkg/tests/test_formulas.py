import math

import pytest
from hypothesis import given, strategies as st

from raysearch import (
    CoverParams,
    InfeasibleRegime,
    InstanceParams,
    NoFiniteHorizon,
    TrivialRegime,
    growth_factor_delta,
    horizon_estimate,
    mu_critical,
    optimal_alpha,
    poly_max_point,
    ratio_lower_bound,
)


class TestInstanceParams:
    def test_derived_quantities(self):
        p = InstanceParams(2, 3, 1)
        assert (p.q, p.s) == (4, 1)
        assert p.rho == pytest.approx(4 / 3)

    def test_infeasible_when_all_robots_may_fail(self):
        with pytest.raises(InfeasibleRegime):
            InstanceParams(2, 2, 2).require_searchable()
        with pytest.raises(InfeasibleRegime):
            InstanceParams(3, 1, 4).require_searchable()

    def test_trivial_when_robots_saturate_rays(self):
        with pytest.raises(TrivialRegime):
            InstanceParams(2, 4, 1).require_searchable()
        assert TrivialRegime.ratio == 1.0

    @pytest.mark.parametrize("m,k,f", [(1, 1, 0), (2, 0, 0), (2, 1, -1)])
    def test_rejects_bad_parameters(self, m, k, f):
        with pytest.raises(ValueError):
            InstanceParams(m, k, f)


class TestClosedForms:
    def test_doubling_bound_is_nine(self, doubling):
        assert ratio_lower_bound(doubling) == pytest.approx(9.0, abs=1e-12)

    def test_three_robot_bound(self, three_robot):
        expected = (8 / 3) * 4 ** (1 / 3) + 1
        assert ratio_lower_bound(three_robot) == pytest.approx(expected, abs=1e-12)

    def test_optimal_base(self, doubling, three_robot):
        assert optimal_alpha(doubling) == pytest.approx(2.0, abs=1e-12)
        assert optimal_alpha(three_robot) == pytest.approx(4 ** (1 / 3), abs=1e-12)

    def test_bound_monotone_in_faults(self):
        prev = 0.0
        for f in range(3):
            lam = ratio_lower_bound(InstanceParams(4, 3, f))
            assert lam > prev
            prev = lam

    def test_base_at_optimum_recovers_bound(self):
        # lambda(alpha) = 2 alpha^q / (alpha^k - 1) + 1 is minimized at
        # optimal_alpha and the minimum equals the closed form.
        for m, k, f in [(2, 1, 0), (2, 3, 1), (3, 2, 0), (4, 5, 2)]:
            p = InstanceParams(m, k, f)
            a = optimal_alpha(p)
            lam = 2 * a**p.q / (a**p.k - 1) + 1
            assert lam == pytest.approx(ratio_lower_bound(p), rel=1e-12)
            for off in (-1e-4, 1e-4):
                b = a + off
                assert 2 * b**p.q / (b**p.k - 1) + 1 >= lam


class TestGrowthQuantities:
    def test_poly_max_point_closed_form(self):
        assert poly_max_point(1, 1, 4.0) == pytest.approx(2.0)
        assert poly_max_point(3, 2, 10.0) == pytest.approx(6.0)

    @given(
        st.integers(1, 12),
        st.integers(1, 12),
        st.floats(0.5, 100.0),
    )
    def test_poly_max_point_is_a_local_max(self, s, k, mu):
        x = poly_max_point(s, k, mu)
        assert 0.0 < x < mu
        g = lambda y: s * math.log(y) + k * math.log(mu - y)
        eps = mu * 1e-7
        assert g(x) >= g(x - eps) - 1e-12
        assert g(x) >= g(x + eps) - 1e-12

    def test_delta_crosses_one_at_mu_critical(self):
        for s, k in [(1, 1), (1, 3), (3, 2)]:
            mc = mu_critical(s, k)
            assert growth_factor_delta(s, k, mc) == pytest.approx(1.0, abs=1e-12)
            assert growth_factor_delta(s, k, mc * 0.99) > 1.0
            assert growth_factor_delta(s, k, mc * 1.01) < 1.0

    def test_doubling_delta_is_one_at_tight_mu(self):
        # mu = (9 - 1) / 2 = 4 and delta(1, 1, 4) = 2^2 / 4 = 1 exactly.
        assert growth_factor_delta(1, 1, 4.0) == pytest.approx(1.0, abs=1e-15)
        assert mu_critical(1, 1) == pytest.approx(4.0, abs=1e-12)


class TestHorizonEstimate:
    def test_finite_below_tight_bound(self, doubling):
        N = horizon_estimate(doubling, 8.0, C=16.0)
        assert N > 1.0
        assert math.isfinite(N) or N == math.inf

    def test_monotone_in_lambda(self, doubling):
        # Closer to the tight bound means a longer horizon is needed.
        n1 = horizon_estimate(doubling, 7.0, C=16.0)
        n2 = horizon_estimate(doubling, 8.5, C=16.0)
        assert n2 >= n1

    def test_rejects_lambda_at_or_above_bound(self, doubling):
        with pytest.raises(NoFiniteHorizon):
            horizon_estimate(doubling, 9.0, C=16.0)
        with pytest.raises(NoFiniteHorizon):
            horizon_estimate(doubling, 9.5, C=16.0)

    def test_rejects_gap_constant_below_mu(self, doubling):
        with pytest.raises(ValueError):
            horizon_estimate(doubling, 8.0, C=3.0)

    def test_overflow_reports_infinity(self, three_robot):
        lam0 = ratio_lower_bound(three_robot)
        C = optimal_alpha(three_robot) ** (2 * 2 * 3)
        N = horizon_estimate(three_robot, 0.999 * lam0, C)
        assert N == math.inf


class TestCoverParams:
    def test_mu(self):
        assert CoverParams(9.0).mu == pytest.approx(4.0)

    def test_rejects_degenerate_lambda(self):
        with pytest.raises(ValueError):
            CoverParams(1.0)
