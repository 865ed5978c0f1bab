"""Bundled test networks.

``standin_network`` is a 10-node, 13-link network with exactly six
simple routes from node 1 to node 10.  The published experiment it
mirrors never printed its topology, only the link parameter table, the
node count and the route count; this graph is a documented stand-in
that reuses the published free-flow times and design capacities
(links 1..13) at the same scale.  Results on it reproduce qualitative
trends, not the original figures.

Topology (link id: tail -> head)::

     1: 1->2    2: 1->3    3: 2->4    4: 2->5    5: 3->5
     6: 3->6    7: 4->7    8: 5->7    9: 5->8   10: 6->8
    11: 7->9   12: 8->9   13: 9->10

Six simple 1->10 routes: 1-3-7-11-13, 1-4-8-11-13, 1-4-9-12-13,
2-5-8-11-13, 2-5-9-12-13, 2-6-10-12-13.
"""

from __future__ import annotations

from .network import Link, Network, ODPair

__all__ = ["standin_network", "standin_network_text", "three_route_toy",
           "parallel_links_network"]

# (id, tail, head, t0 minutes, design capacity pcu/h)
_STANDIN_LINKS = (
    (1, 1, 2, 10.0, 1000.0),
    (2, 1, 3, 10.0, 1000.0),
    (3, 2, 4, 10.0, 1000.0),
    (4, 2, 5, 5.0, 1600.0),
    (5, 3, 5, 10.0, 1000.0),
    (6, 3, 6, 5.0, 1000.0),
    (7, 4, 7, 10.0, 1000.0),
    (8, 5, 7, 10.0, 1000.0),
    (9, 5, 8, 4.0, 1500.0),
    (10, 6, 8, 10.0, 2000.0),
    (11, 7, 9, 30.0, 1000.0),
    (12, 8, 9, 10.0, 1000.0),
    (13, 9, 10, 10.0, 1000.0),
)


def standin_network(theta: float = 0.8, demand: float = 4000.0) -> Network:
    """The bundled 10-node / 13-link network with one OD pair 1 -> 10."""
    links = tuple(Link(i, t, h, t0, cap, theta) for i, t, h, t0, cap in _STANDIN_LINKS)
    return Network(links, (ODPair(1, 10, demand),))


def standin_network_text(theta: float = 0.8, demand: float = 4000.0) -> str:
    """The stand-in network serialized in the network file format."""
    lines = ["# bundled stand-in network: 10 nodes, 13 links, one OD pair",
             "[links]",
             "# id  tail  head  t0_min  cap_pcu_h  theta"]
    for i, t, h, t0, cap in _STANDIN_LINKS:
        lines.append(f"{i}  {t}  {h}  {t0:g}  {cap:g}  {theta:g}")
    lines += ["", "[od]", "# origin  destination  demand_pcu_h",
              f"1  10  {demand:g}", ""]
    return "\n".join(lines)


def three_route_toy(theta: float = 0.8, demand: float = 1000.0) -> Network:
    """Three parallel links between two nodes; used for brute-force checks."""
    links = (
        Link(1, 1, 2, 10.0, 500.0, theta),
        Link(2, 1, 2, 12.0, 600.0, theta),
        Link(3, 1, 2, 15.0, 700.0, theta),
    )
    return Network(links, (ODPair(1, 2, demand),))


def parallel_links_network(n_links: int = 2, t0: float = 10.0, cap: float = 1000.0,
                           theta: float = 0.8, demand: float = 2000.0) -> Network:
    """n identical parallel links between two nodes."""
    links = tuple(Link(i + 1, 1, 2, t0, cap, theta) for i in range(n_links))
    return Network(links, (ODPair(1, 2, demand),))
