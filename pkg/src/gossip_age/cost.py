"""Mobility-cost trade-off.

The scalarized objective weighs freshness against the rate spent on updates
and mobility: J_alpha(lam) = alpha * v1(lam) + (1 - alpha) * lam, where lam
enters both the source-to-nodes rate and the mobility rate. Replacing v1 by
its bound K/lam makes the objective alpha*K/lam + (1-alpha)*lam, convex in
lam with the closed-form minimizer lam* = sqrt(alpha K/(1-alpha)) and
minimum 2 sqrt(alpha (1-alpha) K). The sweep evaluates both the bound-based
and the exact objective on a grid so the two argmins can be compared.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConfigError, MobilityScaling, NetworkConfig, Topology
from .analytic import v_symmetric
from .scaling import k_constant

__all__ = [
    "CostProfile",
    "CostSweepRow",
    "cost_j",
    "optimal_lambda",
    "optimal_cost",
    "cost_profile",
    "cost_sweep",
]


def _check_alpha_k(alpha: float, k: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must be in (0, 1), got {alpha}")
    if not k > 0:
        raise ConfigError(f"K must be positive, got {k}")


@dataclass(frozen=True)
class CostProfile:
    """Closed-form optimum of the bound-based objective for one (alpha, K)."""

    alpha: float
    k: float
    lambda_star: float
    j_star: float


def cost_j(alpha: float, k: float, lam: float) -> float:
    """Bound-based objective alpha*K/lam + (1-alpha)*lam."""
    _check_alpha_k(alpha, k)
    if not lam > 0:
        raise ConfigError(f"lam must be positive, got {lam}")
    return alpha * k / lam + (1.0 - alpha) * lam


def optimal_lambda(alpha: float, k: float) -> float:
    """Minimizer of the bound-based objective: sqrt(alpha K / (1 - alpha))."""
    _check_alpha_k(alpha, k)
    return math.sqrt(alpha * k / (1.0 - alpha))


def optimal_cost(alpha: float, k: float) -> float:
    """Minimum of the bound-based objective: 2 sqrt(alpha (1 - alpha) K)."""
    _check_alpha_k(alpha, k)
    return 2.0 * math.sqrt(alpha * (1.0 - alpha) * k)


def cost_profile(alpha: float, k: float) -> CostProfile:
    return CostProfile(alpha=alpha, k=k, lambda_star=optimal_lambda(alpha, k),
                       j_star=optimal_cost(alpha, k))


@dataclass(frozen=True)
class CostSweepRow:
    alpha: float
    lam: float
    bound_cost: float
    exact_cost: float
    lambda_star: float        # closed-form minimizer for this alpha
    is_argmin_bound: bool     # grid argmin of the bound-based cost
    is_argmin_exact: bool     # grid argmin of the exact cost


def cost_sweep(
    alpha_list,
    lambda_grid,
    scaling: MobilityScaling,
    topology: Topology,
    n: int,
    lam_e: float,
) -> list[CostSweepRow]:
    """Evaluate both objectives over an (alpha, lam) grid.

    The exact cost recomputes the symmetric recursion per grid point (lam
    scales the source, gossip, and mobility rates together). Bound cost
    always dominates exact cost since v1 <= K/lam. Grid argmins are marked
    per alpha, alongside the closed-form lam* of the bound.
    """
    alphas = list(alpha_list)
    lams = list(lambda_grid)
    if not alphas or not lams:
        raise ConfigError("alpha_list and lambda_grid must be nonempty")
    k = k_constant(scaling, n, lam_e)
    v1 = {}
    for lam in lams:
        cfg = NetworkConfig(n=n, lam_e=lam_e, lam=lam, topology=topology, scaling=scaling)
        v1[lam] = v_symmetric(cfg).v1
    rows: list[CostSweepRow] = []
    for alpha in alphas:
        bound = [cost_j(alpha, k, lam) for lam in lams]
        exact = [alpha * v1[lam] + (1.0 - alpha) * lam for lam in lams]
        bi = min(range(len(lams)), key=bound.__getitem__)
        ei = min(range(len(lams)), key=exact.__getitem__)
        lstar = optimal_lambda(alpha, k)
        for idx, lam in enumerate(lams):
            rows.append(CostSweepRow(
                alpha=alpha, lam=lam,
                bound_cost=bound[idx], exact_cost=exact[idx],
                lambda_star=lstar,
                is_argmin_bound=idx == bi, is_argmin_exact=idx == ei,
            ))
    return rows
