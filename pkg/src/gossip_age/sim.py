"""Event-driven Monte Carlo simulation of the version-age process.

The process state is the source's version counter plus each node's version;
node i's age is their difference. Four Poisson event streams drive it
(source self-updates, direct pushes, gossip, pairwise contacts), superposed
onto a single exponential clock with categorical thinning. Contacts merge
both endpoints to the fresher version; the exchange-mobility baseline swaps
the two versions instead.

Seed contract: the same (config, horizon, seed, warmup) yields the same
trajectory, bit for bit. Randomness is consumed as raw uniforms from
numpy's PCG64 generator (two per event: holding time and event identity);
the raw PCG64 stream is versioned and platform-independent, and the only
transforms applied to it are -log1p(-u) and an alias-table lookup. The
generator name is recorded on every result.

Time averages are exact piecewise-constant integrals, not samples. There is
no warm-up by default; ages start at 0, so the initial-transient bias is
O(1/T) and a horizon of T >= 1e5/lam_e makes it negligible next to the
Monte Carlo error. Pass ``warmup`` to discard an initial fraction instead.
"""
from __future__ import annotations

import math
import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import _kernel
from .core import ConfigError, NetworkConfig, RateSet, Topology, build_rates

__all__ = [
    "SOURCE",
    "EventKind",
    "Event",
    "SimState",
    "SimResult",
    "MonteCarloEstimate",
    "ZeroTotalRateError",
    "sample_next_event",
    "apply_event",
    "simulate_rates",
    "simulate_contact",
    "simulate_exchange",
    "run_replications",
    "monte_carlo",
]

RNG_NAME = "pcg64"
_CHUNK = 1 << 21          # uniforms generated per refill
_Z95 = 1.959963984540054  # two-sided 95% normal quantile

SOURCE = -1
"""Sentinel node index for the source endpoint of a contact event."""


class ZeroTotalRateError(ValueError):
    """All event rates are zero; there is no next event to sample."""


class EventKind(Enum):
    SOURCE_SELF_UPDATE = "source_self_update"
    SOURCE_PUSH = "source_push"
    GOSSIP = "gossip"
    CONTACT_MEET = "contact_meet"
    EXCHANGE_SWAP = "exchange_swap"


@dataclass(frozen=True)
class Event:
    """One transition. Node indices are 0-based; ``SOURCE`` (-1) marks the
    source endpoint of a contact. GOSSIP is directed (i relays to j);
    CONTACT_MEET and EXCHANGE_SWAP are unordered."""

    kind: EventKind
    i: int | None = None
    j: int | None = None


@dataclass(frozen=True)
class SimState:
    """Versions held by the source and each node at a point in time.

    Nodes can never lead the source, so every age
    ``source_version - versions[i]`` is nonnegative.
    """

    source_version: int
    versions: tuple[int, ...]
    clock: float = 0.0

    def __post_init__(self) -> None:
        if self.source_version < 0 or any(v < 0 for v in self.versions):
            raise ValueError("versions must be nonnegative")
        if any(v > self.source_version for v in self.versions):
            raise ValueError("a node version exceeds the source version")
        if self.clock < 0:
            raise ValueError("clock must be nonnegative")

    @property
    def ages(self) -> tuple[int, ...]:
        return tuple(self.source_version - v for v in self.versions)


@dataclass(frozen=True)
class SimResult:
    """Time-average ages from one trajectory.

    ``events_processed`` counts events realized before the horizon; while
    the network is fully synced the no-op non-source events are coalesced
    away (exactly, by memorylessness) and never sampled, so they are not
    counted.
    """

    per_node_time_avg_age: np.ndarray
    network_avg_age: float
    horizon: float
    events_processed: int
    seed: int
    warmup: float = 0.0
    rng: str = RNG_NAME


class MonteCarloEstimate(NamedTuple):
    mean: float
    half_width_95: float


# --- event tables ------------------------------------------------------------

_KIND_SELF = 0
_KIND_SET_TO_SOURCE = 1
_KIND_GOSSIP = 2
_KIND_MEET = 3
_KIND_SWAP = 4


@dataclass(frozen=True)
class _EventTable:
    kinds: np.ndarray    # int8
    a: np.ndarray        # int64
    b: np.ndarray        # int64
    total: float
    aprob: np.ndarray
    aalias: np.ndarray
    events: tuple[Event, ...]
    lam_e: float


def _finish_table(rows: list[tuple[int, int, int, float, Event]], lam_e: float) -> _EventTable:
    if not rows:
        raise ZeroTotalRateError("all event rates are zero")
    kinds = np.array([r[0] for r in rows], dtype=np.int8)
    a = np.array([r[1] for r in rows], dtype=np.int64)
    b = np.array([r[2] for r in rows], dtype=np.int64)
    rates = np.array([r[3] for r in rows], dtype=np.float64)
    aprob, aalias = _kernel.build_alias(rates)
    return _EventTable(
        kinds=kinds, a=a, b=b, total=float(rates.sum()),
        aprob=aprob, aalias=aalias,
        events=tuple(r[4] for r in rows), lam_e=lam_e,
    )


_TABLE_CACHE: "weakref.WeakKeyDictionary[RateSet, _EventTable]" = weakref.WeakKeyDictionary()


def _contact_table(rates: RateSet) -> _EventTable:
    """Flatten a RateSet into one row per positive-rate event stream.

    Row order is fixed (self-update, pushes, gossip row-major, source
    contacts, node-pair contacts) so the categorical index mapping, and
    therefore every seeded trajectory, is stable. Tables are cached per
    RateSet instance (rates are immutable).
    """
    cached = _TABLE_CACHE.get(rates)
    if cached is not None:
        return cached
    n = rates.n
    rows: list[tuple[int, int, int, float, Event]] = []
    if rates.lam_e > 0:
        rows.append((_KIND_SELF, 0, 0, rates.lam_e, Event(EventKind.SOURCE_SELF_UPDATE)))
    for j in range(n):
        r = rates.source_to_node[j]
        if r > 0:
            rows.append((_KIND_SET_TO_SOURCE, 0, j, r, Event(EventKind.SOURCE_PUSH, j=j)))
    for i in range(n):
        for j in range(n):
            r = rates.gossip[i, j]
            if r > 0:
                rows.append((_KIND_GOSSIP, i, j, r, Event(EventKind.GOSSIP, i=i, j=j)))
    msrc = rates.mobility_source
    for j in range(n):
        r = msrc[j]
        if r > 0:
            rows.append((_KIND_SET_TO_SOURCE, 0, j, r, Event(EventKind.CONTACT_MEET, i=SOURCE, j=j)))
    mnode = rates.mobility_nodes
    for i in range(n):
        for j in range(i + 1, n):
            r = mnode[i, j]
            if r > 0:
                rows.append((_KIND_MEET, i, j, r, Event(EventKind.CONTACT_MEET, i=i, j=j)))
    table = _finish_table(rows, rates.lam_e)
    _TABLE_CACHE[rates] = table
    return table


def _exchange_table(config: NetworkConfig, lambda_m: float) -> _EventTable:
    """Exchange-mobility event table: direct pushes at lam/n plus pairwise
    position swaps at lambda_m; no gossip, and the source never swaps."""
    n, lam = config.n, config.lam
    rows: list[tuple[int, int, int, float, Event]] = []
    if config.lam_e > 0:
        rows.append((_KIND_SELF, 0, 0, config.lam_e, Event(EventKind.SOURCE_SELF_UPDATE)))
    for j in range(n):
        rows.append((_KIND_SET_TO_SOURCE, 0, j, lam / n, Event(EventKind.SOURCE_PUSH, j=j)))
    if lambda_m > 0:
        for i in range(n):
            for j in range(i + 1, n):
                rows.append((_KIND_SWAP, i, j, lambda_m, Event(EventKind.EXCHANGE_SWAP, i=i, j=j)))
    return _finish_table(rows, config.lam_e)


# --- single-step operations ---------------------------------------------------

def _draw(table: _EventTable, u1: float, u2: float) -> tuple[float, int]:
    """(holding time, event row index) from two uniforms."""
    dt = -math.log1p(-u1) / table.total
    x = u2 * table.aprob.size
    k = int(x)
    idx = k if x - k < table.aprob[k] else int(table.aalias[k])
    return dt, idx


def sample_next_event(rates: RateSet, rng: np.random.Generator) -> tuple[float, Event]:
    """Sample the holding time and identity of the next event.

    The holding time is Exp(total rate); the event is drawn with probability
    proportional to its rate (superposition of independent Poisson streams).
    Raises ZeroTotalRateError when every rate is zero.
    """
    table = _contact_table(rates)  # raises ZeroTotalRateError when empty
    dt, idx = _draw(table, rng.random(), rng.random())
    return dt, table.events[idx]


def apply_event(state: SimState, event: Event) -> SimState:
    """Post-transition state for one event.

    Self-update bumps the source version (every age rises by one). A direct
    push or a contact with the source sets that node to the source's version
    (age resets to zero). Gossip i->j leaves the sender alone and gives the
    receiver the fresher version, i.e. the minimum age. A node-node contact
    does that for both endpoints; an exchange swaps the two versions.
    """
    n = len(state.versions)

    def check(idx: int | None, allow_source: bool = False) -> int:
        if idx is None:
            raise IndexError(f"{event.kind.value} requires node indices")
        if idx == SOURCE and allow_source:
            return idx
        if not 0 <= idx < n:
            raise IndexError(f"node index {idx} out of range for n={n}")
        return idx

    k = event.kind
    if k is EventKind.SOURCE_SELF_UPDATE:
        return SimState(state.source_version + 1, state.versions, state.clock)
    v = list(state.versions)
    if k is EventKind.SOURCE_PUSH:
        j = check(event.j)
        v[j] = state.source_version
    elif k is EventKind.GOSSIP:
        i, j = check(event.i), check(event.j)
        if i == j:
            raise IndexError("gossip requires two distinct nodes")
        v[j] = max(v[j], v[i])
    elif k is EventKind.CONTACT_MEET:
        i, j = check(event.i, allow_source=True), check(event.j, allow_source=True)
        if i == j:
            raise IndexError("contact requires two distinct endpoints")
        if i == SOURCE:
            v[j] = state.source_version
        elif j == SOURCE:
            v[i] = state.source_version
        else:
            v[i] = v[j] = max(v[i], v[j])
    elif k is EventKind.EXCHANGE_SWAP:
        i, j = check(event.i), check(event.j)
        if i == j:
            raise IndexError("exchange requires two distinct nodes")
        v[i], v[j] = v[j], v[i]
    else:  # pragma: no cover
        raise ValueError(f"unknown event kind {k}")
    return SimState(state.source_version, tuple(v), state.clock)


# --- trajectory runners -------------------------------------------------------

def _validate_run_args(horizon: float, warmup: float) -> None:
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if not 0.0 <= warmup < 1.0:
        raise ValueError(f"warmup must be in [0, 1), got {warmup}")


def _run_table(table: _EventTable, n: int, horizon: float, seed: int, warmup: float) -> SimResult:
    _validate_run_args(horizon, warmup)
    rng = np.random.default_rng(seed)
    start = warmup * horizon
    versions = np.zeros(n, dtype=np.int64)
    node_int = np.zeros(n)
    node_t = np.zeros(n)
    clock, nsrc, src_int, src_t = 0.0, 0, 0.0, 0
    synced, events = n, 0
    u = rng.random(_CHUNK)
    pos = 0
    while True:
        done, pos, clock, nsrc, src_int, src_t, synced, events = _kernel.advance(
            table.kinds, table.a, table.b, table.aprob, table.aalias,
            table.total, table.lam_e, horizon, start,
            u, pos, versions, node_int, node_t,
            clock, nsrc, src_int, src_t, synced, events,
        )
        if done:
            break
        # carry the unread tail so the uniform stream stays contiguous
        tail = u[pos:]
        u = np.concatenate((tail, rng.random(_CHUNK))) if tail.size else rng.random(_CHUNK)
        pos = 0
    window = horizon - start
    per_node = (src_int - node_int) / window
    per_node.setflags(write=False)
    return SimResult(
        per_node_time_avg_age=per_node,
        network_avg_age=float(per_node.mean()),
        horizon=horizon,
        events_processed=int(events),
        seed=seed,
        warmup=warmup,
    )


def simulate_rates(rates: RateSet, horizon: float, seed: int, warmup: float = 0.0) -> SimResult:
    """Simulate the contact-mobility age process for an arbitrary rate set."""
    if rates.total_rate() <= 0:
        raise ZeroTotalRateError("all event rates are zero")
    return _run_table(_contact_table(rates), rates.n, horizon, seed, warmup)


def simulate_contact(config: NetworkConfig, horizon: float, seed: int, warmup: float = 0.0) -> SimResult:
    """Simulate the symmetric contact-mobility network given by ``config``."""
    return simulate_rates(build_rates(config), horizon, seed, warmup)


def simulate_exchange(
    config: NetworkConfig,
    lambda_m: float,
    horizon: float,
    seed: int,
    warmup: float = 0.0,
) -> SimResult:
    """Simulate the exchange-mobility baseline (DC only).

    Meetings swap the two nodes' versions instead of merging to the fresher
    one; the source pushes at lam/n per node and there is no gossip. The
    steady-state age is n lam_e/lam whatever ``lambda_m`` is.
    """
    if config.topology is not Topology.DISCONNECTED:
        raise ConfigError("exchange mobility is defined for the disconnected topology only")
    if lambda_m < 0:
        raise ConfigError(f"lambda_m must be >= 0, got {lambda_m}")
    return _run_table(_exchange_table(config, lambda_m), config.n, horizon, seed, warmup)


def _simulate_python(table: _EventTable, n: int, horizon: float, seed: int, warmup: float = 0.0) -> SimResult:
    """Reference trajectory built from apply_event, consuming the identical
    uniform stream as the kernel. Slow; used to cross-check the kernel."""
    _validate_run_args(horizon, warmup)
    rng = np.random.default_rng(seed)
    start = warmup * horizon
    state = SimState(0, (0,) * n)
    integrals = np.zeros(n)
    src_int = 0.0
    clock, events = 0.0, 0
    while True:
        synced = all(v == state.source_version for v in state.versions)
        if synced and table.lam_e <= 0.0:
            t = horizon
            event = None
        elif synced:
            dt = -math.log1p(-rng.random()) / table.lam_e
            t = clock + dt
            event = Event(EventKind.SOURCE_SELF_UPDATE)
        else:
            dt, idx = _draw(table, rng.random(), rng.random())
            t = clock + dt
            event = table.events[idx]
        seg = min(t, horizon) - max(clock, start)
        if seg > 0:
            src_int += state.source_version * seg
            integrals += np.array(state.versions, dtype=np.float64) * seg
        if t >= horizon or event is None:
            break
        state = apply_event(state, event)
        clock = t
        events += 1
    window = horizon - start
    per_node = (src_int - integrals) / window
    return SimResult(
        per_node_time_avg_age=per_node,
        network_avg_age=float(per_node.mean()),
        horizon=horizon,
        events_processed=events,
        seed=seed,
        warmup=warmup,
    )


# --- replication harness ------------------------------------------------------

def run_replications(
    config: NetworkConfig,
    horizon: float,
    replications: int,
    base_seed: int,
    *,
    exchange: bool = False,
    lambda_m: float = 0.0,
    warmup: float = 0.0,
    workers: int = 1,
) -> list[SimResult]:
    """Independent replications with seeds base_seed, base_seed+1, ...

    Results come back in seed order whatever ``workers`` is, so downstream
    output is independent of scheduling. Threads are effective because the
    kernel releases the GIL.
    """
    if replications < 1:
        raise ValueError(f"replications must be >= 1, got {replications}")
    seeds = [base_seed + r for r in range(replications)]
    if exchange:
        run = lambda s: simulate_exchange(config, lambda_m, horizon, s, warmup)
    else:
        run = lambda s: simulate_contact(config, horizon, s, warmup)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, seeds))
    return [run(s) for s in seeds]


def monte_carlo(
    config: NetworkConfig,
    horizon: float,
    replications: int,
    base_seed: int,
    *,
    exchange: bool = False,
    lambda_m: float = 0.0,
    warmup: float = 0.0,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Mean network-average age over replications with a 95% normal CI.

    Needs at least two replications for a variance estimate. Deterministic:
    the same arguments give bit-identical output regardless of ``workers``.
    """
    if replications < 2:
        raise ValueError(f"monte_carlo needs >= 2 replications, got {replications}")
    results = run_replications(
        config, horizon, replications, base_seed,
        exchange=exchange, lambda_m=lambda_m, warmup=warmup, workers=workers,
    )
    means = np.array([r.network_avg_age for r in results])
    half = _Z95 * means.std(ddof=1) / math.sqrt(replications)
    return MonteCarloEstimate(mean=float(means.mean()), half_width_95=float(half))
