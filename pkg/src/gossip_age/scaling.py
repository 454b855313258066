"""Closed-form upper bounds on the single-node age and scaling verification.

The bounds come from unrolling the symmetric recursions and bounding the
harmonic sums; they certify the asymptotic orders (ln n for f(n)=n,
(ln n)^2/n for f(n)=c ln n, ln n/n for f(n)=c) for both topologies. For DC
networks each bound factors as K/lam with K given by :func:`k_constant`,
which is what the cost module minimizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConfigError, MobilityScaling, NetworkConfig, ScalingKind, Topology
from .analytic import harmonic, v_symmetric

__all__ = ["ScalingReport", "k_constant", "upper_bound_v1", "asymptotic_envelope", "scaling_sweep"]


@dataclass(frozen=True)
class ScalingReport:
    """Sweep of exact v1 against its closed-form bound over a list of n.

    ``samples`` rows are (n, v1_exact, upper_bound); ``max_ratio`` is the
    largest v1/g(n) seen, g being the asymptotic envelope for this scaling.
    """

    scaling: MobilityScaling
    topology: Topology
    samples: tuple[tuple[int, float, float], ...]
    max_ratio: float


def k_constant(scaling: MobilityScaling, n: int, lam_e: float) -> float:
    """The constant K in the DC bound v1(lam) <= K/lam.

    Linear: lam_e (ln n + 1).
    Log:    c lam_e (ln n)^2/n + c lam_e ln n/n + c lam_e ln n/(n(n + c ln n)).
    Const:  c lam_e (ln n + 1)/n + c lam_e/(n(c + n)).

    K is linear in lam_e (lam_e = 0 gives 0). Defined for n >= 2.
    """
    if n < 2:
        raise ConfigError(f"bounds are derived for n >= 2, got {n}")
    if lam_e < 0:
        raise ConfigError(f"lam_e must be >= 0, got {lam_e}")
    ln = math.log(n)
    c = scaling.c
    if scaling.kind is ScalingKind.LINEAR:
        return lam_e * (ln + 1.0)
    if scaling.kind is ScalingKind.LOG:
        return (
            c * lam_e * ln * ln / n
            + c * lam_e * ln / n
            + c * lam_e * ln / (n * (n + c * ln))
        )
    return c * lam_e * (ln + 1.0) / n + c * lam_e / (n * (c + n))


def upper_bound_v1(
    scaling: MobilityScaling,
    topology: Topology,
    n: int,
    lam_e: float,
    lam: float,
) -> float:
    """Closed-form upper bound on the single-node age.

    DC bounds are K/lam with K from :func:`k_constant`. FC bounds keep the
    effective per-pair rate lam/(n-1) + lam/f(n) explicit:

    Linear: (lam_e/lam) 2(n-1) H_{n-1}/(2n-1) + lam_e/(2 lam).
    Log:    2 c lam_e (ln n + 1) ln n/(lam (n-1)) + c lam_e ln n/(lam (c ln n + n)).
    Const:  2 c lam_e (ln n + 1)/(lam n) + c lam_e/(lam (c + n)).
    """
    if n < 2:
        raise ConfigError(f"bounds are derived for n >= 2, got {n}")
    if not lam > 0:
        raise ConfigError(f"lam must be positive, got {lam}")
    if topology is Topology.DISCONNECTED:
        return k_constant(scaling, n, lam_e) / lam
    ln = math.log(n)
    c = scaling.c
    if scaling.kind is ScalingKind.LINEAR:
        return (lam_e / lam) * 2.0 * (n - 1) * harmonic(n - 1) / (2 * n - 1) + lam_e / (2.0 * lam)
    if scaling.kind is ScalingKind.LOG:
        return (
            2.0 * c * lam_e * (ln + 1.0) * ln / (lam * (n - 1))
            + c * lam_e * ln / (lam * (c * ln + n))
        )
    return 2.0 * c * lam_e * (ln + 1.0) / (lam * n) + c * lam_e / (lam * (c + n))


def asymptotic_envelope(scaling: MobilityScaling, n: int) -> float:
    """Asymptotic envelope g(n) the age is O() of: ln n, (ln n)^2/n, or ln n/n."""
    ln = math.log(n)
    if scaling.kind is ScalingKind.LINEAR:
        return ln
    if scaling.kind is ScalingKind.LOG:
        return ln * ln / n
    return ln / n


def scaling_sweep(
    scaling: MobilityScaling,
    topology: Topology,
    n_list,
    lam_e: float,
    lam: float,
) -> ScalingReport:
    """Exact v1, bound, and envelope ratio across a list of network sizes.

    Every n must be >= 2 (the bounds are not derived below that). An empty
    list gives an empty report with max_ratio 0.
    """
    samples = []
    max_ratio = 0.0
    for n in n_list:
        cfg = NetworkConfig(n=n, lam_e=lam_e, lam=lam, topology=topology, scaling=scaling)
        v1 = v_symmetric(cfg).v1
        bound = upper_bound_v1(scaling, topology, n, lam_e, lam)
        samples.append((n, v1, bound))
        max_ratio = max(max_ratio, v1 / asymptotic_envelope(scaling, n))
    return ScalingReport(
        scaling=scaling, topology=topology, samples=tuple(samples), max_ratio=max_ratio
    )
