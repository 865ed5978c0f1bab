import numpy as np
import pytest

from cmte.bpr import BprParams, bpr_time, link_mean, link_var, route_moments
from cmte.montecarlo import McConfig, mc_link_moments
from cmte.network import Link, Network, ODPair, build_route_set

P = BprParams()  # beta=0.15, n=4


def make_link(t0=10.0, cap=1000.0, theta=0.8):
    return Link(1, 1, 2, t0, cap, theta)


class TestParams:
    def test_defaults(self):
        assert P.beta == 0.15 and P.n == 4

    @pytest.mark.parametrize("kwargs", [
        dict(beta=0.0), dict(beta=-1.0), dict(n=1), dict(n=0), dict(n=2.5)])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            BprParams(**{"beta": 0.15, "n": 4, **kwargs})


class TestBprTime:
    def test_free_flow(self):
        assert bpr_time(make_link(), 0.0, 1000.0, P) == 10.0

    def test_at_capacity(self):
        assert bpr_time(make_link(), 1000.0, 1000.0, P) == pytest.approx(11.5)

    def test_over_capacity(self):
        # 10 * (1 + 0.15 * 16)
        assert bpr_time(make_link(), 2000.0, 1000.0, P) == pytest.approx(34.0)

    def test_capacity_domain(self):
        with pytest.raises(ValueError):
            bpr_time(make_link(), 100.0, 0.0, P)


class TestLinkMean:
    def test_free_flow(self):
        assert link_mean(make_link(), 0.0, P) == pytest.approx(10.0)

    def test_theta_near_one_matches_plain_bpr(self):
        lk = make_link(theta=0.999999)
        assert link_mean(lk, 1000.0, P) == pytest.approx(11.5, rel=1e-4)

    def test_theta_one_is_plain_bpr(self):
        lk = make_link(theta=1.0)
        assert link_mean(lk, 1000.0, P) == pytest.approx(11.5, rel=1e-12)

    def test_closed_form_value(self):
        # exact evaluation of the uniform-capacity moment formula
        assert link_mean(make_link(), 1000.0, P) == pytest.approx(12.3828125, rel=1e-10)

    def test_degradation_worsens_mean(self):
        lk = make_link()
        for v in (100.0, 500.0, 1000.0, 2000.0):
            assert link_mean(lk, v, P) > bpr_time(lk, v, lk.cap_design, P)

    def test_matches_monte_carlo(self):
        lk = make_link()
        est = mc_link_moments(lk, 1000.0, P, McConfig(samples=10 ** 6, seed=42))
        assert abs(link_mean(lk, 1000.0, P) - est.mean) <= 3 * est.mean_se


class TestLinkVar:
    def test_free_flow(self):
        assert link_var(make_link(), 0.0, P) == 0.0

    def test_theta_one(self):
        assert link_var(make_link(theta=1.0), 1000.0, P) == 0.0

    def test_closed_form_value(self):
        assert link_var(make_link(), 1000.0, P) == pytest.approx(0.37851, rel=1e-4)

    def test_nonnegative(self):
        for theta in (0.3, 0.6, 0.9, 0.999):
            for v in (0.0, 500.0, 1500.0, 3000.0):
                assert link_var(make_link(theta=theta), v, P) >= 0.0

    def test_continuity_at_theta_one(self):
        lk_near = make_link(theta=1.0 - 1e-6)
        lk_one = make_link(theta=1.0)
        m_near = link_mean(lk_near, 1000.0, P)
        m_one = link_mean(lk_one, 1000.0, P)
        assert abs(m_near - m_one) / m_one < 1e-4

    def test_matches_monte_carlo(self):
        lk = make_link()
        est = mc_link_moments(lk, 1000.0, P, McConfig(samples=10 ** 6, seed=7))
        assert abs(link_var(lk, 1000.0, P) - est.var) <= 3 * est.var_se


class TestRouteMoments:
    def _series_net(self):
        links = (Link(1, 1, 2, 10.0, 1000.0, 0.8), Link(2, 2, 3, 10.0, 1000.0, 0.8))
        return Network(links, (ODPair(1, 3, 100.0),))

    def test_single_link_route(self):
        links = (Link(1, 1, 2, 10.0, 1000.0, 0.8),)
        net = Network(links, (ODPair(1, 2, 100.0),))
        rs = build_route_set(net)
        v = np.array([700.0])
        mom = route_moments(net, rs, v, P)
        assert mom.mu[0] == pytest.approx(link_mean(links[0], 700.0, P))
        assert mom.sigma[0] == pytest.approx(np.sqrt(link_var(links[0], 700.0, P)))

    def test_two_identical_links_in_series(self):
        net = self._series_net()
        rs = build_route_set(net)
        v = np.array([800.0, 800.0])
        mom = route_moments(net, rs, v, P)
        one_mean = link_mean(net.links[0], 800.0, P)
        one_sd = np.sqrt(link_var(net.links[0], 800.0, P))
        assert mom.mu[0] == pytest.approx(2 * one_mean)
        assert mom.sigma[0] == pytest.approx(np.sqrt(2) * one_sd)

    def test_mu_at_least_free_flow(self):
        net = self._series_net()
        rs = build_route_set(net)
        for v_level in (0.0, 500.0, 2000.0):
            mom = route_moments(net, rs, np.full(2, v_level), P)
            assert mom.mu[0] >= 20.0 - 1e-12
            assert np.all(mom.sigma >= 0.0)
