"""Scenario sweeps over optimism weight, demand level and degradation level.

A :class:`Scenario` fixes the confidence level and the three sweep grids
(lambda, total demand Q, uniform degradation Theta).  ``run_scenario``
solves the equilibrium at every grid point and collects one
:class:`SweepRow` per point; ``emit_results`` writes the result table,
per-solve convergence logs and plot-ready ANTT-vs-lambda series.

ANTT (average network travel time) is the demand-weighted mean route
travel time sum_k f_k * mu_k / sum_od q.  By flow conservation this
equals the link-level form sum_a v_a * E[T_a] / sum_od q; both are
computed and cross-checked on every evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bpr import BprParams, RouteMoments, link_moments_vector, route_moments
from .indices import IndexKind, RiskProfile
from .network import Network, RouteSet, build_route_set, link_flows
from .solver import SolverConfig, extragradient_solve, wardrop_check

__all__ = ["Scenario", "SweepRow", "SweepResult", "ScenarioError",
           "antt", "run_scenario", "emit_results"]


class ScenarioError(ValueError):
    """Invalid scenario configuration."""


def _fmt(x: float) -> str:
    """Deterministic float formatting for output files."""
    return f"{float(x):.12g}"


@dataclass(frozen=True)
class Scenario:
    alpha: float = 0.9
    lambda_grid: tuple[float, ...] = (0.5,)
    demand_grid: tuple[float, ...] = (4000.0,)
    theta_grid: tuple[float, ...] = (0.8,)
    bpr: BprParams = BprParams()
    solver: SolverConfig = SolverConfig()

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ScenarioError(f"alpha must be in (0, 1), got {self.alpha}")
        for name, grid in (("lambda_grid", self.lambda_grid),
                           ("demand_grid", self.demand_grid),
                           ("theta_grid", self.theta_grid)):
            if len(grid) == 0:
                raise ScenarioError(f"{name} must be nonempty")
        if any(not 0.0 <= lam <= 1.0 for lam in self.lambda_grid):
            raise ScenarioError("lambda values must lie in [0, 1]")
        if any(q <= 0 for q in self.demand_grid):
            raise ScenarioError("demand values must be > 0")
        if any(not 0.0 < t <= 1.0 for t in self.theta_grid):
            raise ScenarioError("theta values must lie in (0, 1]")

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        """Build from a JSON document mirroring the fields of this type.

        Recognized keys: alpha, lambda_grid, demand_grid, theta_grid,
        bpr {beta, n}, solver {tol, max_iter, step_init, step_shrink,
        step_grow}.  Missing keys fall back to defaults.
        """
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ScenarioError("scenario config must be a JSON object")
        known = {"alpha", "lambda_grid", "demand_grid", "theta_grid", "bpr", "solver"}
        unknown = set(raw) - known
        if unknown:
            raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
        kwargs = {}
        if "alpha" in raw:
            kwargs["alpha"] = float(raw["alpha"])
        for key in ("lambda_grid", "demand_grid", "theta_grid"):
            if key in raw:
                kwargs[key] = tuple(float(x) for x in raw[key])
        if "bpr" in raw:
            kwargs["bpr"] = BprParams(**raw["bpr"])
        if "solver" in raw:
            kwargs["solver"] = SolverConfig(**raw["solver"])
        try:
            return cls(**kwargs)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ScenarioError):
                raise
            raise ScenarioError(str(exc)) from exc


@dataclass(frozen=True)
class SweepRow:
    lam: float
    demand: float
    theta: float
    antt: float
    iterations: int
    residual: float
    converged: bool
    wardrop_ok: bool
    flows: np.ndarray
    psi: np.ndarray
    residual_history: np.ndarray = field(repr=False)
    antt_history: np.ndarray = field(repr=False)
    step_history: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]


def antt(f: np.ndarray, rs: RouteSet, moments: RouteMoments,
         total_demand: float) -> float:
    """Demand-weighted average route mean travel time."""
    if total_demand <= 0:
        raise ZeroDivisionError("total demand must be > 0 for ANTT")
    return float(np.asarray(f) @ moments.mu / total_demand)


def _antt_link_form(net: Network, v: np.ndarray, p: BprParams,
                    total_demand: float) -> float:
    means, _ = link_moments_vector(net, v, p)
    return float(v @ means / total_demand)


def run_scenario(net: Network, sc: Scenario,
                 wardrop_rel_tol: float = 1e-3) -> SweepResult:
    """Solve every (theta, demand, lambda) grid point in deterministic order.

    For each point the base network gets a uniform theta and its OD
    demands scaled so they total the grid demand.  Failed solves are
    recorded with converged=False, never dropped.
    """
    base_q = net.total_demand()
    if base_q <= 0:
        raise ScenarioError("network must carry positive total demand")
    rs = build_route_set(net)
    rows = []
    for theta in sc.theta_grid:
        for q in sc.demand_grid:
            point_net = net.with_uniform_theta(theta).with_scaled_demand(q / base_q)
            for lam in sc.lambda_grid:
                profile = RiskProfile(sc.alpha, lam)
                res = extragradient_solve(point_net, rs, sc.bpr, profile,
                                          sc.solver, kind=IndexKind.CMTT)
                v = link_flows(rs, res.f_star)
                mom = route_moments(point_net, rs, v, sc.bpr)
                a = antt(res.f_star, rs, mom, q)
                a_link = _antt_link_form(point_net, v, sc.bpr, q)
                if res.converged and abs(a - a_link) > 1e-6 * max(1.0, abs(a)):
                    raise RuntimeError(
                        f"ANTT cross-check failed: route form {a} vs link form {a_link}")
                wok = wardrop_check(res, point_net, rs,
                                    rel_tol=wardrop_rel_tol).passed if res.converged else False
                rows.append(SweepRow(
                    lam=lam, demand=q, theta=theta, antt=a,
                    iterations=res.iterations,
                    residual=float(res.residual_history[-1]),
                    converged=res.converged, wardrop_ok=wok,
                    flows=res.f_star, psi=res.cmtt_per_route,
                    residual_history=res.residual_history,
                    antt_history=res.antt_history,
                    step_history=res.step_history))
    return SweepResult(tuple(rows))


def emit_results(res: SweepResult, dest: str | Path) -> list[Path]:
    """Write results table, convergence logs and ANTT series under dest.

    Layout::

        results.tsv                         one row per grid point
        convergence/point_####.tsv          per-iteration log per solve
        series/antt_vs_lambda__Q*_T*.tsv    one series per (Q, Theta)

    All files are tab-separated with a header row and written with
    fixed formatting, so identical sweeps produce byte-identical files.
    """
    dest = Path(dest)
    try:
        dest.mkdir(parents=True, exist_ok=True)
        (dest / "convergence").mkdir(exist_ok=True)
        (dest / "series").mkdir(exist_ok=True)
        written = []

        table = dest / "results.tsv"
        with table.open("w", newline="\n") as fh:
            fh.write("lambda\tdemand\ttheta\tantt\titerations\tresidual\t"
                     "converged\twardrop_ok\tflows\tpsi\n")
            for row in res.rows:
                flows = ";".join(_fmt(x) for x in row.flows)
                psi = ";".join(_fmt(x) for x in row.psi)
                fh.write(f"{_fmt(row.lam)}\t{_fmt(row.demand)}\t{_fmt(row.theta)}\t"
                         f"{_fmt(row.antt)}\t{row.iterations}\t{_fmt(row.residual)}\t"
                         f"{int(row.converged)}\t{int(row.wardrop_ok)}\t"
                         f"{flows}\t{psi}\n")
        written.append(table)

        for i, row in enumerate(res.rows):
            log = dest / "convergence" / f"point_{i:04d}.tsv"
            with log.open("w", newline="\n") as fh:
                fh.write("iteration\tresidual\tantt\tstep\n")
                for it, (r, a, s) in enumerate(zip(row.residual_history,
                                                   row.antt_history,
                                                   row.step_history)):
                    fh.write(f"{it}\t{_fmt(r)}\t{_fmt(a)}\t{_fmt(s)}\n")
            written.append(log)

        groups: dict[tuple[float, float], list[SweepRow]] = {}
        for row in res.rows:
            groups.setdefault((row.demand, row.theta), []).append(row)
        for (q, theta), rows in sorted(groups.items()):
            series = dest / "series" / f"antt_vs_lambda__Q{q:g}_T{theta:g}.tsv"
            with series.open("w", newline="\n") as fh:
                fh.write("lambda\tantt\n")
                for row in sorted(rows, key=lambda r: r.lam):
                    fh.write(f"{_fmt(row.lam)}\t{_fmt(row.antt)}\n")
            written.append(series)
        return written
    except OSError as exc:
        raise OSError(f"failed writing results under {dest}: {exc}") from exc
