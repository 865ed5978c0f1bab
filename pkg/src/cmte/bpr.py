"""BPR link costs with uniformly degradable capacity.

Link travel time follows t0 * [1 + beta * (v / C)^n] where the realized
capacity C is uniform on [theta * C_bar, C_bar].  The mean and variance
of the travel time then have closed forms built from the negative
moments of the uniform distribution:

    E[C^-n] = (1 - theta^(1-n)) / (C_bar^n * (1 - theta) * (1 - n))

and similarly with 2n for the second moment.  theta = 1 is the
deterministic limit (plain BPR, zero variance); to stay clear of the
0/0 at theta -> 1 the limit branch is taken whenever |1 - theta| < 1e-9.

Route moments aggregate link moments under independence: means add,
variances add, sigma = sqrt of the variance sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import Link, Network, RouteSet

__all__ = ["BprParams", "RouteMoments", "bpr_time", "link_mean", "link_var",
           "link_moments_vector", "route_moments"]

THETA_LIMIT_EPS = 1e-9


@dataclass(frozen=True)
class BprParams:
    beta: float = 0.15
    n: int = 4

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError(f"beta must be > 0, got {self.beta}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n!r}")


@dataclass(frozen=True)
class RouteMoments:
    mu: np.ndarray     # per-route mean travel time, minutes
    sigma: np.ndarray  # per-route standard deviation, minutes


def bpr_time(link: Link, v, capacity, p: BprParams):
    """Deterministic BPR travel time t0 * [1 + beta * (v/capacity)^n]."""
    if np.any(np.asarray(capacity) <= 0):
        raise ValueError("capacity must be > 0")
    return link.t0 * (1.0 + p.beta * (np.asarray(v, dtype=float) / capacity) ** p.n)


def _inv_cap_moment(theta, cap, order):
    """E[C^-order] for C ~ U(theta*cap, cap), theta < 1."""
    return (1.0 - theta ** (1 - order)) / (cap ** order * (1.0 - theta) * (1 - order))


def link_mean(link: Link, v, p: BprParams):
    """Expected travel time under degradable capacity."""
    if 1.0 - link.theta < THETA_LIMIT_EPS:
        return bpr_time(link, v, link.cap_design, p)
    v = np.asarray(v, dtype=float)
    return link.t0 + p.beta * link.t0 * v ** p.n * _inv_cap_moment(
        link.theta, link.cap_design, p.n)


def link_var(link: Link, v, p: BprParams):
    """Travel time variance under degradable capacity (0 when theta = 1)."""
    v = np.asarray(v, dtype=float)
    if 1.0 - link.theta < THETA_LIMIT_EPS:
        return np.zeros_like(v) if v.ndim else 0.0
    m1 = _inv_cap_moment(link.theta, link.cap_design, p.n)
    m2 = _inv_cap_moment(link.theta, link.cap_design, 2 * p.n)
    return (p.beta * link.t0) ** 2 * v ** (2 * p.n) * (m2 - m1 ** 2)


def link_moments_vector(net: Network, v: np.ndarray, p: BprParams):
    """Per-link (means, variances) arrays for a link-flow vector."""
    v = np.asarray(v, dtype=float)
    if v.shape != (net.n_links,):
        raise ValueError(f"link-flow vector has shape {v.shape}, "
                         f"expected ({net.n_links},)")
    means = np.array([link_mean(l, v[i], p) for i, l in enumerate(net.links)])
    variances = np.array([link_var(l, v[i], p) for i, l in enumerate(net.links)])
    return means, variances


def route_moments(net: Network, rs: RouteSet, v: np.ndarray, p: BprParams) -> RouteMoments:
    """Aggregate link moments to routes assuming independent link times."""
    means, variances = link_moments_vector(net, v, p)
    mu = rs.delta.T @ means
    sigma = np.sqrt(rs.delta.T @ variances)
    return RouteMoments(mu, sigma)
