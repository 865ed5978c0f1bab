"""Route-based equilibrium as a variational inequality, solved by
extra-gradient projection.

The unknown is u = (f, pi): route flows stacked with one multiplier per
OD pair (the realized minimum generalized cost).  The mapping is

    F(u) = ( psi(f) - Lambda^T pi ,  Lambda f - Q )

over the nonnegative orthant, where psi is the per-route risk index
(mean + coefficient * standard deviation), Lambda the OD-route
incidence and Q the demand vector.  A zero of the natural residual
u - P(u - F(u)) is exactly a Wardrop point: used routes share the
minimal index value, unused routes cost at least as much, and demand is
conserved.

The solver is the classic two-projection extra-gradient iteration with
backtracking on the step size: tau is halved until
tau * ||F(u) - F(u_bar)|| <= nu * ||u - u_bar|| and grown again after
accepted steps, so no Lipschitz constant is needed up front.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bpr import BprParams, route_moments
from .indices import IndexKind, RiskProfile, risk_coefficient
from .network import Network, RouteSet, link_flows

__all__ = ["SolverConfig", "EquilibriumResult", "WardropReport", "SolverError",
           "assemble_F", "project", "natural_residual", "extragradient_solve",
           "wardrop_check", "route_costs"]


class SolverError(RuntimeError):
    """Numerical breakdown (NaN/overflow) during a solve."""


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-4
    max_iter: int = 10_000
    step_init: float | None = None  # default 1 / (1 + ||F(u0)||_inf)
    step_shrink: float = 0.5
    step_grow: float = 1.1
    nu: float = 0.9  # backtracking acceptance factor

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be > 0")
        if not 0.0 < self.step_shrink < 1.0 < self.step_grow:
            raise ValueError("need 0 < step_shrink < 1 < step_grow")


@dataclass
class EquilibriumResult:
    f_star: np.ndarray
    pi_star: np.ndarray
    iterations: int
    residual_history: np.ndarray
    antt_history: np.ndarray
    step_history: np.ndarray
    cmtt_per_route: np.ndarray
    wardrop_gap: float
    converged: bool


@dataclass(frozen=True)
class WardropReport:
    passed: bool
    od_gaps: np.ndarray      # per OD: max used-route index deviation / min index
    min_costs: np.ndarray    # per OD minimum index value
    unused_ok: bool          # unused routes never undercut the minimum


def route_costs(f: np.ndarray, net: Network, rs: RouteSet, p: BprParams,
                profile: RiskProfile, kind: IndexKind = IndexKind.CMTT) -> np.ndarray:
    """Per-route index values psi(f) at the given route flows."""
    v = link_flows(rs, np.maximum(f, 0.0))
    mom = route_moments(net, rs, v, p)
    return mom.mu + risk_coefficient(kind, profile) * mom.sigma


def assemble_F(f: np.ndarray, pi: np.ndarray, net: Network, rs: RouteSet,
               p: BprParams, profile: RiskProfile,
               kind: IndexKind = IndexKind.CMTT) -> np.ndarray:
    """Stacked mapping: (psi(f) - Lambda^T pi, Lambda f - Q)."""
    f = np.asarray(f, dtype=float)
    pi = np.asarray(pi, dtype=float)
    if f.shape != (rs.n_routes,) or pi.shape != (len(net.od_pairs),):
        raise ValueError("dimension mismatch between (f, pi) and (routes, OD pairs)")
    psi = route_costs(f, net, rs, p, profile, kind)
    q = np.array([od.demand for od in net.od_pairs])
    return np.concatenate([psi - rs.lambda_inc.T @ pi, rs.lambda_inc @ f - q])


def project(u: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the nonnegative orthant."""
    return np.maximum(u, 0.0)


def natural_residual(u: np.ndarray, F_u: np.ndarray) -> float:
    """||u - P(u - F(u))||_inf / (1 + ||u||_inf); zero exactly at solutions."""
    r = np.abs(u - project(u - F_u)).max()
    return float(r / (1.0 + np.abs(u).max()))


def _initial_point(net: Network, rs: RouteSet, p: BprParams, profile: RiskProfile,
                   kind: IndexKind) -> np.ndarray:
    """Equal demand split per OD; multipliers at the per-OD minimum index."""
    f0 = np.zeros(rs.n_routes)
    for oi, od in enumerate(net.od_pairs):
        ks = rs.routes_of_od(oi)
        if ks:
            f0[ks] = od.demand / len(ks)
    psi0 = route_costs(f0, net, rs, p, profile, kind)
    pi0 = np.array([min(psi0[k] for k in rs.routes_of_od(oi)) if rs.routes_of_od(oi)
                    else 0.0 for oi in range(len(net.od_pairs))])
    return np.concatenate([f0, pi0])


def extragradient_solve(net: Network, rs: RouteSet, p: BprParams,
                        profile: RiskProfile, cfg: SolverConfig = SolverConfig(),
                        f0: np.ndarray | None = None,
                        kind: IndexKind = IndexKind.CMTT) -> EquilibriumResult:
    """Run the extra-gradient iteration until the natural residual meets tol.

    Returns a result flagged ``converged=False`` (with full residual
    history) if max_iter is exhausted; raises SolverError on NaN or
    overflow in the iterates.
    """
    m, w = rs.n_routes, len(net.od_pairs)
    total_q = net.total_demand()

    def F(u):
        return assemble_F(u[:m], u[m:], net, rs, p, profile, kind)

    def antt_of(u):
        f = u[:m]
        v = link_flows(rs, np.maximum(f, 0.0))
        mom = route_moments(net, rs, v, p)
        return float(f @ mom.mu / total_q) if total_q > 0 else 0.0

    if f0 is not None:
        f0 = project(np.asarray(f0, dtype=float))
        psi0 = route_costs(f0, net, rs, p, profile, kind)
        pi0 = np.array([min((psi0[k] for k in rs.routes_of_od(oi)), default=0.0)
                        for oi in range(w)])
        u = np.concatenate([f0, pi0])
    else:
        u = _initial_point(net, rs, p, profile, kind)

    Fu = F(u)
    tau = cfg.step_init if cfg.step_init is not None else 1.0 / (1.0 + np.abs(Fu).max())
    residuals, antts, steps = [], [], []
    converged = False
    iterations = 0

    for it in range(cfg.max_iter):
        iterations = it + 1
        if not np.all(np.isfinite(u)) or not np.all(np.isfinite(Fu)):
            raise SolverError(f"non-finite iterate at iteration {it}")
        res = natural_residual(u, Fu)
        residuals.append(res)
        antts.append(antt_of(u))
        steps.append(tau)
        if res <= cfg.tol:
            converged = True
            break
        # backtracking: shrink tau until the Lipschitz-proxy inequality holds
        while True:
            u_bar = project(u - tau * Fu)
            F_bar = F(u_bar)
            lhs = tau * np.linalg.norm(Fu - F_bar)
            rhs = cfg.nu * np.linalg.norm(u - u_bar)
            if lhs <= rhs or rhs == 0.0:
                break
            tau *= cfg.step_shrink
            if tau < 1e-14:
                raise SolverError(f"step size underflow at iteration {it}")
        u = project(u - tau * F_bar)
        Fu = F(u)
        tau *= cfg.step_grow

    f_star, pi_star = u[:m], u[m:]
    if converged:
        f_star = _polish_demand(f_star, net, rs)
    psi = route_costs(f_star, net, rs, p, profile, kind)
    gap = _max_relative_gap(f_star, psi, net, rs)
    return EquilibriumResult(
        f_star=f_star, pi_star=pi_star, iterations=iterations,
        residual_history=np.array(residuals), antt_history=np.array(antts),
        step_history=np.array(steps), cmtt_per_route=psi,
        wardrop_gap=gap, converged=converged)


def _polish_demand(f: np.ndarray, net: Network, rs: RouteSet) -> np.ndarray:
    """Rescale each OD's route flows so demand is met exactly.

    The stopping rule leaves demand residuals on the order of
    tol * (1 + ||u||), far coarser than the flows themselves; a
    proportional rescale removes them without moving the flow pattern.
    """
    f = f.copy()
    for oi, od in enumerate(net.od_pairs):
        ks = rs.routes_of_od(oi)
        total = sum(f[k] for k in ks)
        if total > 0:
            f[ks] = f[ks] * (od.demand / total)
    return f


def _max_relative_gap(f: np.ndarray, psi: np.ndarray, net: Network, rs: RouteSet,
                      used_threshold: float = 1e-4) -> float:
    gap = 0.0
    for oi, od in enumerate(net.od_pairs):
        ks = rs.routes_of_od(oi)
        if not ks:
            continue
        pmin = min(psi[k] for k in ks)
        used = [k for k in ks if f[k] > used_threshold * max(od.demand, 1.0)]
        for k in used:
            gap = max(gap, abs(psi[k] - pmin) / pmin if pmin > 0 else abs(psi[k] - pmin))
    return gap


def wardrop_check(result: EquilibriumResult, net: Network, rs: RouteSet,
                  used_threshold: float = 1e-4, rel_tol: float = 1e-3) -> WardropReport:
    """Verify equalized-cost conditions at a converged point.

    Used routes (flow above used_threshold * OD demand) must have index
    values within rel_tol (relative) of the OD minimum; no route may
    undercut that minimum by more than rel_tol relative.
    """
    f, psi = result.f_star, result.cmtt_per_route
    w = len(net.od_pairs)
    od_gaps = np.zeros(w)
    min_costs = np.zeros(w)
    passed = True
    unused_ok = True
    for oi, od in enumerate(net.od_pairs):
        ks = rs.routes_of_od(oi)
        if not ks:
            continue
        pmin = min(psi[k] for k in ks)
        min_costs[oi] = pmin
        scale = abs(pmin) if pmin != 0 else 1.0
        used = [k for k in ks if f[k] > used_threshold * max(od.demand, 1.0)]
        gap = max((abs(psi[k] - pmin) / scale for k in used), default=0.0)
        od_gaps[oi] = gap
        if gap > rel_tol:
            passed = False
        if any(psi[k] < pmin - rel_tol * scale for k in ks):
            unused_ok = False
            passed = False
    return WardropReport(passed, od_gaps, min_costs, unused_ok)
