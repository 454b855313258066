"""Exact steady-state average version age.

Two routes to the same quantity:

* :func:`solve_subset_dp` evaluates the general subset recursion for an
  arbitrary rate set: the steady-state expected minimum age over a node
  subset S equals (lam_e + sum of in-rates times the superset values)
  divided by the subset's total exit rate. Each subset depends only on its
  strict supersets, so one pass in decreasing-cardinality order solves the
  whole table with no fixed-point iteration.

* :func:`v_symmetric` collapses the recursion to cardinality classes for the
  symmetric DC/FC x f(n) cases (where every subset of size j has the same
  value) and back-substitutes from j = n down to 1 in O(n).

The subset table is exponential in n and exists for desk-scale verification;
large n goes through :func:`v_symmetric`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    ConfigError,
    MobilityScaling,
    NetworkConfig,
    RateSet,
    ScalingKind,
    Topology,
)

__all__ = [
    "SubsetAgeTable",
    "SymmetricAgeProfile",
    "SubsetCapError",
    "UnreachableSubsetError",
    "solve_subset_dp",
    "v_symmetric",
    "v_closed_form_dc_linear",
    "v_n_terminal",
    "v_exchange_dc",
    "harmonic",
]

SUBSET_CAP_DEFAULT = 20


class SubsetCapError(ValueError):
    """Subset table would exceed the configured cap (2^n - 1 entries)."""


class UnreachableSubsetError(ValueError):
    """A subset has zero total exit rate: no direct source link, no source
    mobility, and no positive in-rate from outside. Cannot happen under full
    mobility; signals a misconfigured sparse rate set."""


@dataclass(frozen=True)
class SubsetAgeTable:
    """Steady-state expected minimum age for every nonempty node subset.

    ``values[mask]`` holds the value for the subset whose bit b (1 << b) is
    node b; ``values[0]`` is NaN.
    """

    n: int
    values: np.ndarray

    def age(self, subset) -> float:
        """Value for a subset given as a bitmask int or an iterable of node
        indices."""
        mask = subset if isinstance(subset, (int, np.integer)) else _mask_of(subset)
        if not 0 < mask < (1 << self.n):
            raise IndexError(f"subset mask {mask} out of range for n={self.n}")
        return float(self.values[mask])


@dataclass(frozen=True)
class SymmetricAgeProfile:
    """Common subset value by cardinality for a symmetric network.

    ``v[j]`` is the steady-state expected minimum age over any j nodes,
    j = 1..n (``v[0]`` is NaN so indexing matches the math).
    """

    n: int
    v: np.ndarray

    @property
    def v1(self) -> float:
        """Single-node average age."""
        return float(self.v[1])

    def age(self, j: int) -> float:
        if not 1 <= j <= self.n:
            raise IndexError(f"cardinality {j} out of range 1..{self.n}")
        return float(self.v[j])


def _mask_of(nodes) -> int:
    mask = 0
    for b in nodes:
        mask |= 1 << int(b)
    return mask


def solve_subset_dp(rates: RateSet, cap: int = SUBSET_CAP_DEFAULT) -> SubsetAgeTable:
    """Solve the subset recursion for an arbitrary rate set.

    For each nonempty subset S (processed in decreasing cardinality):

        v_S = (lam_e + sum_{i not in S} w_i(S) * v_{S + {i}}) / d(S)
        d(S) = lam_0(S) + lam^m_0(S) + sum_{i not in S} w_i(S)

    where w_i(S) is node i's total in-rate into S (gossip from i to members
    plus pairwise mobility with members), lam_0(S) the direct source-push
    rate into S, and lam^m_0(S) the source-mobility rate into S. Links are
    defined by strict rate positivity (> 0.0, no epsilon).

    Raises SubsetCapError when n exceeds ``cap`` and UnreachableSubsetError
    when some subset has zero total exit rate.
    """
    n = rates.n
    if n > cap:
        raise SubsetCapError(f"n={n} exceeds subset table cap {cap} (2^n entries)")
    src = rates.source_to_node
    msrc = rates.mobility_source
    gos = rates.gossip
    mob = rates.mobility_nodes
    values = np.full(1 << n, np.nan)
    all_nodes = np.arange(n)
    member_flag = np.zeros(n, dtype=bool)
    for size in range(n, 0, -1):
        for combo in combinations(range(n), size):
            members = np.asarray(combo, dtype=np.intp)
            mask = int(np.sum(1 << members))
            num = rates.lam_e
            den = float(src[members].sum() + msrc[members].sum())
            if size < n:
                member_flag[:] = False
                member_flag[members] = True
                outside = all_nodes[~member_flag]
                # in-rate of each outside node into S: gossip rows + mobility rows
                win = gos[outside][:, members].sum(axis=1) + mob[outside][:, members].sum(axis=1)
                for i, w in zip(outside, win):
                    if w > 0.0:
                        num += w * values[mask | (1 << i)]
                        den += w
            if not den > 0.0:
                raise UnreachableSubsetError(
                    f"subset {sorted(combo)} has zero total exit rate; "
                    "the source cannot reach it directly or via mobility"
                )
            values[mask] = num / den
    values.setflags(write=False)
    return SubsetAgeTable(n=n, values=values)


def v_n_terminal(config: NetworkConfig) -> float:
    """Fixed point of the recursion at j = n (all nodes).

    For f(n)=n this is lam_e/(2 lam) regardless of topology; for f(n)=c ln n
    it is c lam_e ln n / (lam (n + c ln n)); for f(n)=c it is
    c lam_e / (lam (c + n)). The gossip terms vanish at j = n, so DC and FC
    share the terminal value.
    """
    n, lam_e, lam = config.n, config.lam_e, config.lam
    kind = config.scaling.kind
    c = config.scaling.c
    if kind is ScalingKind.LINEAR:
        return lam_e / (2.0 * lam)
    if kind is ScalingKind.LOG:
        if n < 2:
            raise ConfigError("log scaling needs n >= 2")
        ln = math.log(n)
        return c * lam_e * ln / (lam * (n + c * ln))
    return c * lam_e / (lam * (c + n))


def v_symmetric(config: NetworkConfig) -> SymmetricAgeProfile:
    """Cardinality-class ages for a symmetric mobile network.

    Dispatches on (topology, scaling): the DC recursions carry only the
    mobility in-rate j(n-j) lam/f(n); FC adds the gossip in-rate
    j(n-j) lam/(n-1). Denominators are j lam/n + j lam/f(n) plus the same
    in-rates. Requires mobility to be enabled (the recursions assume full
    mobility).
    """
    if not config.mobility_enabled:
        raise ConfigError("v_symmetric requires mobility_enabled (full-mobility recursions)")
    n, lam_e, lam = config.n, config.lam_e, config.lam
    f = config.f()
    fc = config.topology is Topology.FULLY_CONNECTED
    v = np.full(n + 1, np.nan)
    v[n] = v_n_terminal(config)
    for j in range(n - 1, 0, -1):
        mob = j * (n - j) * lam / f
        gos = j * (n - j) * lam / (n - 1) if fc else 0.0
        rate_in = mob + gos
        v[j] = (lam_e + rate_in * v[j + 1]) / (j * lam / n + j * lam / f + rate_in)
    v.setflags(write=False)
    return SymmetricAgeProfile(n=n, v=v)


def harmonic(k: int) -> float:
    """H_k = sum_{m=1}^{k} 1/m, by direct ascending summation."""
    return sum(1.0 / m for m in range(1, k + 1))


def v_closed_form_dc_linear(n: int, lam_e: float, lam: float) -> float:
    """Closed-form single-node age for the DC network with f(n) = n:

        (lam_e/lam) H_{n-1} - lam_e (n-1)/(lam (n+1)) + lam_e/(lam n (n+1))

    Must agree with ``v_symmetric(DC, linear).v1`` (the recursion it was
    unrolled from). Defined for n >= 2.
    """
    if n < 2:
        raise ConfigError(f"closed form defined for n >= 2, got {n}")
    if not lam > 0:
        raise ConfigError(f"lam must be positive, got {lam}")
    return (
        (lam_e / lam) * harmonic(n - 1)
        - lam_e * (n - 1) / (lam * (n + 1))
        + lam_e / (lam * n * (n + 1))
    )


def v_exchange_dc(n: int, lam_e: float, lam: float) -> float:
    """Steady-state age under exchange mobility in a DC network: n lam_e/lam.

    Position swaps permute ages without creating information, so the value is
    independent of the exchange rate; this is the baseline contact mobility
    is compared against.
    """
    if n < 1:
        raise ConfigError(f"node count must be >= 1, got {n}")
    if lam_e < 0:
        raise ConfigError(f"lam_e must be >= 0, got {lam_e}")
    if not lam > 0:
        raise ConfigError(f"lam must be positive, got {lam}")
    return n * lam_e / lam
