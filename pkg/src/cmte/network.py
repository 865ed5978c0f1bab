"""Network representation, route enumeration and flow bookkeeping.

A :class:`Network` is a directed graph with per-link free-flow time,
design capacity and capacity degradation degree, plus a list of OD pairs
with demands.  A :class:`RouteSet` enumerates simple directed paths per
OD pair and carries the two incidence structures everything downstream
needs: the link-route 0/1 matrix ``delta`` (|A| x m) and the OD-route
0/1 matrix ``lambda_inc`` (w x m).

Networks are parsed from a small line-oriented text format::

    # comment
    [links]
    # id  tail  head  t0_min  cap_pcu_h  theta
    1  1  2  10  1000  0.8

    [od]
    # origin  destination  demand_pcu_h
    1  10  4000

    [routes]           # optional: explicit link-id sequences
    1 3 7 11 13

Fields are whitespace- or comma-separated; ``#`` starts a comment.
When a ``[routes]`` section is present it overrides enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "Link",
    "ODPair",
    "Network",
    "Route",
    "RouteSet",
    "FeasibilityReport",
    "NetworkParseError",
    "NetworkValidationError",
    "load_network",
    "enumerate_routes",
    "build_route_set",
    "link_flows",
    "check_feasible",
]


class NetworkParseError(ValueError):
    """Malformed network document (message carries line context)."""


class NetworkValidationError(ValueError):
    """Structurally parsed but invalid network."""


@dataclass(frozen=True)
class Link:
    id: int
    tail: int
    head: int
    t0: float            # free-flow travel time, minutes
    cap_design: float    # design capacity, pcu/h
    theta: float         # degradation degree; realized cap ~ U(theta*cap, cap)

    def __post_init__(self):
        if self.t0 <= 0:
            raise NetworkValidationError(f"link {self.id}: t0 must be > 0, got {self.t0}")
        if self.cap_design <= 0:
            raise NetworkValidationError(
                f"link {self.id}: cap_design must be > 0, got {self.cap_design}")
        if not 0.0 < self.theta <= 1.0:
            raise NetworkValidationError(
                f"link {self.id}: theta must be in (0, 1], got {self.theta}")


@dataclass(frozen=True)
class ODPair:
    origin: int
    destination: int
    demand: float  # pcu/h

    def __post_init__(self):
        if self.demand < 0:
            raise NetworkValidationError(
                f"OD {self.origin}->{self.destination}: demand must be >= 0, "
                f"got {self.demand}")


@dataclass(frozen=True)
class Network:
    links: tuple[Link, ...]
    od_pairs: tuple[ODPair, ...]
    preset_routes: tuple[tuple[int, ...], ...] = ()  # explicit link-id sequences

    def __post_init__(self):
        ids = [l.id for l in self.links]
        if len(set(ids)) != len(ids):
            raise NetworkValidationError("duplicate link ids")
        for od in self.od_pairs:
            if not self._has_path(od.origin, od.destination):
                raise NetworkValidationError(
                    f"no directed path from {od.origin} to {od.destination}")

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(n for l in self.links for n in (l.tail, l.head))

    @property
    def n_links(self) -> int:
        return len(self.links)

    def link_by_id(self, link_id: int) -> Link:
        for l in self.links:
            if l.id == link_id:
                return l
        raise KeyError(f"no link with id {link_id}")

    def link_index(self, link_id: int) -> int:
        for i, l in enumerate(self.links):
            if l.id == link_id:
                return i
        raise KeyError(f"no link with id {link_id}")

    def total_demand(self) -> float:
        return sum(od.demand for od in self.od_pairs)

    def with_uniform_theta(self, theta: float) -> "Network":
        """Copy with every link's degradation degree replaced by theta."""
        return replace(self, links=tuple(replace(l, theta=theta) for l in self.links))

    def with_scaled_demand(self, factor: float) -> "Network":
        """Copy with every OD demand multiplied by factor."""
        return replace(self, od_pairs=tuple(
            replace(od, demand=od.demand * factor) for od in self.od_pairs))

    def _has_path(self, src: int, dst: int) -> bool:
        if src == dst:
            return True
        out = {}
        for l in self.links:
            out.setdefault(l.tail, []).append(l.head)
        seen, stack = {src}, [src]
        while stack:
            n = stack.pop()
            for m in out.get(n, ()):
                if m == dst:
                    return True
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        return False


@dataclass(frozen=True)
class Route:
    od_index: int
    link_ids: tuple[int, ...]


@dataclass(frozen=True)
class RouteSet:
    routes: tuple[Route, ...]
    delta: np.ndarray       # (|A|, m) link-route incidence
    lambda_inc: np.ndarray  # (w, m) OD-route incidence

    @property
    def n_routes(self) -> int:
        return len(self.routes)

    def routes_of_od(self, od_index: int) -> list[int]:
        return [k for k, r in enumerate(self.routes) if r.od_index == od_index]


@dataclass(frozen=True)
class FeasibilityReport:
    demand_residuals: np.ndarray  # |sum_k f_k - q| per OD
    min_flow: float
    feasible: bool


# ---------------------------------------------------------------------------
# parsing

def load_network(text: str) -> Network:
    """Parse a network document and return a validated Network."""
    links: list[Link] = []
    ods: list[ODPair] = []
    routes: list[tuple[int, ...]] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("links", "od", "routes"):
                raise NetworkParseError(f"line {lineno}: unknown section [{section}]")
            continue
        if section is None:
            raise NetworkParseError(f"line {lineno}: data before any section header")
        fields = line.replace(",", " ").split()
        try:
            if section == "links":
                if len(fields) != 6:
                    raise NetworkParseError(
                        f"line {lineno}: [links] rows need 6 fields "
                        f"(id tail head t0 cap theta), got {len(fields)}")
                links.append(Link(int(fields[0]), int(fields[1]), int(fields[2]),
                                  float(fields[3]), float(fields[4]), float(fields[5])))
            elif section == "od":
                if len(fields) != 3:
                    raise NetworkParseError(
                        f"line {lineno}: [od] rows need 3 fields "
                        f"(origin destination demand), got {len(fields)}")
                ods.append(ODPair(int(fields[0]), int(fields[1]), float(fields[2])))
            else:
                routes.append(tuple(int(f) for f in fields))
        except NetworkParseError:
            raise
        except NetworkValidationError as exc:
            raise NetworkValidationError(f"line {lineno}: {exc}") from exc
        except ValueError as exc:
            raise NetworkParseError(f"line {lineno}: {exc}") from exc
    if not links:
        raise NetworkParseError("no [links] section or no links defined")
    return Network(tuple(links), tuple(ods), tuple(routes))


# ---------------------------------------------------------------------------
# routes

def enumerate_routes(net: Network, max_routes_per_od: int, max_hops: int) -> RouteSet:
    """Enumerate simple directed paths per OD pair.

    Depth-first search over simple paths with at most max_hops links,
    ranked by free-flow time with the link-id sequence as tie-break, and
    truncated to max_routes_per_od.  Deterministic: the same network
    always yields the same RouteSet.

    Raises NetworkValidationError if an OD pair with positive demand has
    no route within the limits.
    """
    if max_routes_per_od < 1 or max_hops < 1:
        raise ValueError("max_routes_per_od and max_hops must be positive")
    out: dict[int, list[Link]] = {}
    for l in net.links:
        out.setdefault(l.tail, []).append(l)
    for succs in out.values():
        succs.sort(key=lambda l: l.id)

    routes: list[Route] = []
    for oi, od in enumerate(net.od_pairs):
        found: list[tuple[float, tuple[int, ...]]] = []

        def dfs(node, visited, path_ids, t0_sum):
            if node == od.destination:
                found.append((t0_sum, tuple(path_ids)))
                return
            if len(path_ids) >= max_hops:
                return
            for l in out.get(node, ()):
                if l.head not in visited:
                    visited.add(l.head)
                    path_ids.append(l.id)
                    dfs(l.head, visited, path_ids, t0_sum + l.t0)
                    path_ids.pop()
                    visited.remove(l.head)

        dfs(od.origin, {od.origin}, [], 0.0)
        if not found and od.demand > 0:
            raise NetworkValidationError(
                f"OD {od.origin}->{od.destination} has demand {od.demand} "
                f"but no route within {max_hops} hops")
        found.sort(key=lambda fr: (fr[0], fr[1]))
        routes.extend(Route(oi, ids) for _, ids in found[:max_routes_per_od])
    return _assemble_route_set(net, routes)


def build_route_set(net: Network, max_routes_per_od: int = 50,
                    max_hops: int | None = None) -> RouteSet:
    """RouteSet from the network's explicit routes if present, else enumeration."""
    if net.preset_routes:
        routes = [Route(_od_of_sequence(net, seq), seq) for seq in net.preset_routes]
        return _assemble_route_set(net, routes)
    hops = max_hops if max_hops is not None else net.n_links
    return enumerate_routes(net, max_routes_per_od, hops)


def _od_of_sequence(net: Network, seq: tuple[int, ...]) -> int:
    origin = net.link_by_id(seq[0]).tail
    dest = net.link_by_id(seq[-1]).head
    for i, od in enumerate(net.od_pairs):
        if od.origin == origin and od.destination == dest:
            return i
    raise NetworkValidationError(
        f"explicit route {seq} connects {origin}->{dest}, not a listed OD pair")


def _assemble_route_set(net: Network, routes: list[Route]) -> RouteSet:
    m = len(routes)
    delta = np.zeros((net.n_links, m))
    lam = np.zeros((len(net.od_pairs), m))
    for k, r in enumerate(routes):
        _validate_path(net, r)
        for lid in r.link_ids:
            delta[net.link_index(lid), k] = 1.0
        lam[r.od_index, k] = 1.0
    return RouteSet(tuple(routes), delta, lam)


def _validate_path(net: Network, r: Route) -> None:
    od = net.od_pairs[r.od_index]
    seq = [net.link_by_id(lid) for lid in r.link_ids]
    if seq[0].tail != od.origin or seq[-1].head != od.destination:
        raise NetworkValidationError(f"route {r.link_ids} does not connect its OD pair")
    nodes = [seq[0].tail]
    for prev, nxt in zip(seq, seq[1:]):
        if prev.head != nxt.tail:
            raise NetworkValidationError(f"route {r.link_ids} is not contiguous")
    nodes += [l.head for l in seq]
    if len(set(nodes)) != len(nodes):
        raise NetworkValidationError(f"route {r.link_ids} repeats a node")


# ---------------------------------------------------------------------------
# flows

def link_flows(rs: RouteSet, f: np.ndarray) -> np.ndarray:
    """Aggregate route flows to link flows: v_a = sum_k f_k * delta[a, k]."""
    f = np.asarray(f, dtype=float)
    if f.shape != (rs.n_routes,):
        raise ValueError(f"flow vector has shape {f.shape}, expected ({rs.n_routes},)")
    return rs.delta @ f


def check_feasible(rs: RouteSet, f: np.ndarray, net: Network,
                   tol: float = 1e-9) -> FeasibilityReport:
    """Demand-conservation and nonnegativity report for a route-flow vector."""
    f = np.asarray(f, dtype=float)
    q = np.array([od.demand for od in net.od_pairs])
    residuals = np.abs(rs.lambda_inc @ f - q)
    min_flow = float(f.min()) if f.size else 0.0
    feasible = bool(np.all(residuals <= tol) and min_flow >= -tol)
    return FeasibilityReport(residuals, min_flow, feasible)
