import numpy as np
import pytest
from hypothesis import given, strategies as st

from cmte.network import (Link, Network, NetworkParseError, NetworkValidationError,
                          ODPair, build_route_set, check_feasible, enumerate_routes,
                          link_flows, load_network)
from cmte.presets import (parallel_links_network, standin_network,
                          standin_network_text)

SINGLE_LINK_DOC = """
[links]
1 1 2 10 1000 1
[od]
1 2 100
"""


class TestLoadNetwork:
    def test_minimal(self):
        net = load_network(SINGLE_LINK_DOC)
        assert net.n_links == 1
        assert net.od_pairs[0].demand == 100.0
        assert net.links[0].theta == 1.0

    def test_standin_roundtrip(self):
        # the serialized stand-in parses back to the programmatic builder
        net = load_network(standin_network_text())
        ref = standin_network()
        assert net.links == ref.links
        assert net.od_pairs == ref.od_pairs

    def test_standin_shape(self):
        net = load_network(standin_network_text())
        assert net.n_links == 13
        assert len(net.nodes) == 10
        assert all(l.theta == 0.8 for l in net.links)

    def test_comments_and_commas(self):
        net = load_network("[links]\n1, 1, 2, 10, 1000, 0.8  # a link\n[od]\n1 2 50\n")
        assert net.links[0].cap_design == 1000.0

    def test_theta_zero_rejected(self):
        doc = SINGLE_LINK_DOC.replace("10 1000 1", "10 1000 0")
        with pytest.raises(NetworkValidationError, match="theta"):
            load_network(doc)

    def test_parse_error_carries_line(self):
        with pytest.raises(NetworkParseError, match="line 3"):
            load_network("[links]\n1 1 2 10 1000 1\nbogus row here\n")

    def test_data_before_section(self):
        with pytest.raises(NetworkParseError, match="section"):
            load_network("1 1 2 10 1000 1\n")

    def test_negative_demand(self):
        with pytest.raises(NetworkValidationError, match="demand"):
            load_network("[links]\n1 1 2 10 1000 1\n[od]\n1 2 -5\n")

    def test_unreachable_od(self):
        with pytest.raises(NetworkValidationError, match="no directed path"):
            load_network("[links]\n1 1 2 10 1000 1\n[od]\n2 1 100\n")

    def test_explicit_routes_section(self):
        doc = standin_network_text() + "\n[routes]\n1 4 9 12 13\n2 6 10 12 13\n"
        net = load_network(doc)
        rs = build_route_set(net)
        assert [r.link_ids for r in rs.routes] == [(1, 4, 9, 12, 13), (2, 6, 10, 12, 13)]


class TestEnumerateRoutes:
    def test_parallel_links(self):
        net = parallel_links_network(n_links=2)
        rs = enumerate_routes(net, 10, 5)
        assert rs.n_routes == 2

    def test_standin_has_six_routes(self):
        # oracle: exhaustive DFS over the stand-in graph finds exactly 6 paths
        net = standin_network()
        rs = enumerate_routes(net, 6, 13)
        assert rs.n_routes == 6
        assert {r.link_ids for r in rs.routes} == {
            (1, 3, 7, 11, 13), (1, 4, 8, 11, 13), (1, 4, 9, 12, 13),
            (2, 5, 8, 11, 13), (2, 5, 9, 12, 13), (2, 6, 10, 12, 13)}

    def test_ranked_by_free_flow_time(self):
        net = standin_network()
        rs = enumerate_routes(net, 6, 13)
        t0s = [sum(net.link_by_id(l).t0 for l in r.link_ids) for r in rs.routes]
        assert t0s == sorted(t0s)

    def test_truncation(self):
        rs = enumerate_routes(standin_network(), 3, 13)
        assert rs.n_routes == 3

    def test_hop_cap_excludes_long_routes(self):
        with pytest.raises(NetworkValidationError, match="no route"):
            enumerate_routes(standin_network(), 6, 3)

    def test_nonpositive_limits_rejected(self):
        net = parallel_links_network()
        with pytest.raises(ValueError):
            enumerate_routes(net, 5, 0)
        with pytest.raises(ValueError):
            enumerate_routes(net, 0, 5)

    def test_deterministic(self):
        a = enumerate_routes(standin_network(), 6, 13)
        b = enumerate_routes(standin_network(), 6, 13)
        assert a.routes == b.routes
        assert np.array_equal(a.delta, b.delta)
        assert np.array_equal(a.lambda_inc, b.lambda_inc)

    def test_incidence_structure(self):
        rs = enumerate_routes(standin_network(), 6, 13)
        # each route column has a 1 per traversed link, one OD row each
        assert rs.delta.shape == (13, 6)
        assert np.all(rs.lambda_inc.sum(axis=0) == 1.0)


class TestLinkFlows:
    def setup_method(self):
        self.net = standin_network()
        self.rs = build_route_set(self.net)

    def test_zero(self):
        assert np.all(link_flows(self.rs, np.zeros(6)) == 0.0)

    def test_single_route(self):
        f = np.zeros(6)
        f[0] = 100.0  # route (1, 4, 9, 12, 13)
        v = link_flows(self.rs, f)
        for lid in (1, 4, 9, 12, 13):
            assert v[self.net.link_index(lid)] == 100.0
        assert v.sum() == 500.0

    def test_shared_link_additivity(self):
        f = np.zeros(6)
        f[0], f[1] = 50.0, 70.0  # both traverse links 9, 12, 13
        v = link_flows(self.rs, f)
        assert v[self.net.link_index(13)] == 120.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            link_flows(self.rs, np.zeros(5))

    @given(st.lists(st.floats(0, 1000), min_size=6, max_size=6),
           st.lists(st.floats(0, 1000), min_size=6, max_size=6),
           st.floats(0, 5), st.floats(0, 5))
    def test_linearity(self, f1, f2, a, b):
        f1, f2 = np.array(f1), np.array(f2)
        lhs = link_flows(self.rs, a * f1 + b * f2)
        rhs = a * link_flows(self.rs, f1) + b * link_flows(self.rs, f2)
        assert np.allclose(lhs, rhs, rtol=1e-9, atol=1e-9)
        assert np.all(link_flows(self.rs, f1) >= 0.0)


class TestCheckFeasible:
    def setup_method(self):
        self.net = standin_network()
        self.rs = build_route_set(self.net)

    def test_equal_split_feasible(self):
        f = np.full(6, 4000.0 / 6)
        rep = check_feasible(self.rs, f, self.net, tol=1e-9)
        assert rep.feasible
        assert rep.demand_residuals[0] < 1e-9

    def test_demand_shortfall(self):
        f = np.full(6, 3999.0 / 6)
        rep = check_feasible(self.rs, f, self.net, tol=1e-6)
        assert not rep.feasible
        assert rep.demand_residuals[0] == pytest.approx(1.0)

    def test_tiny_negative_within_tol(self):
        f = np.full(6, 4000.0 / 6)
        f[0] += f[3] + 1e-12
        f[3] = -1e-12
        rep = check_feasible(self.rs, f, self.net, tol=1e-9)
        assert rep.feasible
        assert rep.min_flow == pytest.approx(-1e-12)
