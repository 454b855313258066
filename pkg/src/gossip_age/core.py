"""Network configuration, topology, and rate-matrix construction.

Conventions used throughout the package: the network has ``n`` nodes indexed
``0..n-1`` plus a separate source. Gossip rates are stored as an ``n x n``
matrix (``gossip[i, j]`` = rate at which node i relays to node j). Pairwise
contact-mobility rates are stored as an ``(n+1) x (n+1)`` symmetric matrix
over the index set {source} + nodes, where row/column 0 is the source and
row/column ``k`` is node ``k-1``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

__all__ = [
    "ScalingKind",
    "MobilityScaling",
    "Topology",
    "NetworkConfig",
    "RateSet",
    "ConfigError",
    "f_eval",
    "build_rates",
    "config_from_dict",
    "load_config",
]


class ConfigError(ValueError):
    """Raised for invalid network configurations or malformed config files."""


class ScalingKind(Enum):
    """How the pairwise mobility rate lam/f(n) decays with network size."""

    LINEAR = "linear"    # f(n) = n
    LOG = "log"          # f(n) = c ln n
    CONST = "const"      # f(n) = c

    def __str__(self) -> str:
        return self.value


class Topology(Enum):
    DISCONNECTED = "dc"     # no gossip links
    FULLY_CONNECTED = "fc"  # all-pairs gossip at lam/(n-1)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MobilityScaling:
    """Mobility-rate divisor f(n): one of n, c*ln(n), or c."""

    kind: ScalingKind
    c: float = 1.0

    def __post_init__(self) -> None:
        if self.kind is not ScalingKind.LINEAR and not self.c > 0:
            raise ConfigError(f"scaling constant c must be positive, got {self.c}")


def f_eval(scaling: MobilityScaling, n: int) -> float:
    """Evaluate f(n) for the given scaling.

    Natural log throughout. LOG requires n >= 2 (ln 1 = 0 would zero the
    mobility denominator).
    """
    if n < 1:
        raise ConfigError(f"node count must be >= 1, got {n}")
    if scaling.kind is ScalingKind.LINEAR:
        return float(n)
    if scaling.kind is ScalingKind.LOG:
        if n < 2:
            raise ConfigError("log scaling needs n >= 2 (f(1) would be 0)")
        return scaling.c * math.log(n)
    return scaling.c


@dataclass(frozen=True)
class NetworkConfig:
    """Symmetric-network parameters.

    ``lam`` is the aggregate source-to-nodes rate (each node receives direct
    updates at lam/n) and also the base rate for gossip (lam/(n-1) per link)
    and mobility (lam/f(n) per pair). ``lam_e`` is the source self-update
    rate. ``lam_e = 0`` is permitted (a source that never versions; every
    steady-state age is then 0).
    """

    n: int
    lam_e: float
    lam: float
    topology: Topology = Topology.DISCONNECTED
    scaling: MobilityScaling = field(default_factory=lambda: MobilityScaling(ScalingKind.LINEAR))
    mobility_enabled: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ConfigError(f"node count must be >= 1, got {self.n}")
        if self.lam_e < 0:
            raise ConfigError(f"lam_e must be >= 0, got {self.lam_e}")
        if not self.lam > 0:
            raise ConfigError(f"lam must be positive, got {self.lam}")
        if self.scaling.kind is ScalingKind.LOG and self.n < 2:
            raise ConfigError("log scaling needs n >= 2")

    def f(self) -> float:
        """f(n) for this config."""
        return f_eval(self.scaling, self.n)


@dataclass(frozen=True, eq=False)  # identity equality: instances cache derived tables
class RateSet:
    """Fully expanded per-pair rates.

    The analytic solver and the simulator consume this form directly, so
    arbitrary asymmetric rate sets can be fed to both for testing;
    :func:`build_rates` is just the symmetric factory.

    Attributes:
        source_to_node: length-n vector, direct source-to-node push rates.
        gossip: n x n matrix, ``gossip[i, j]`` = rate node i relays to j
            (zero diagonal).
        mobility: (n+1) x (n+1) symmetric matrix over {source} + nodes with
            zero diagonal; index 0 is the source, index k is node k-1.
        lam_e: source self-update rate.
    """

    source_to_node: np.ndarray
    gossip: np.ndarray
    mobility: np.ndarray
    lam_e: float

    def __post_init__(self) -> None:
        src = np.ascontiguousarray(np.asarray(self.source_to_node, dtype=np.float64))
        gos = np.ascontiguousarray(np.asarray(self.gossip, dtype=np.float64))
        mob = np.ascontiguousarray(np.asarray(self.mobility, dtype=np.float64))
        n = src.shape[0]
        if gos.shape != (n, n):
            raise ConfigError(f"gossip must be {n}x{n}, got {gos.shape}")
        if mob.shape != (n + 1, n + 1):
            raise ConfigError(f"mobility must be {n + 1}x{n + 1}, got {mob.shape}")
        if self.lam_e < 0:
            raise ConfigError(f"lam_e must be >= 0, got {self.lam_e}")
        if np.any(src < 0) or np.any(gos < 0) or np.any(mob < 0):
            raise ConfigError("rates must be nonnegative")
        if np.any(np.diag(gos) != 0) or np.any(np.diag(mob) != 0):
            raise ConfigError("gossip and mobility diagonals must be zero")
        if not np.array_equal(mob, mob.T):
            raise ConfigError("mobility matrix must be symmetric (pairwise rates are unordered)")
        for arr in (src, gos, mob):
            arr.setflags(write=False)
        object.__setattr__(self, "source_to_node", src)
        object.__setattr__(self, "gossip", gos)
        object.__setattr__(self, "mobility", mob)

    @property
    def n(self) -> int:
        return self.source_to_node.shape[0]

    @property
    def mobility_source(self) -> np.ndarray:
        """Source-node mobility rates, length n (node k at index k)."""
        return self.mobility[0, 1:]

    @property
    def mobility_nodes(self) -> np.ndarray:
        """Node-node mobility rates, n x n view of the full matrix."""
        return self.mobility[1:, 1:]

    def total_rate(self) -> float:
        """Superposed event rate: lam_e + pushes + gossip + mobility pairs."""
        pairs = float(np.triu(self.mobility, k=1).sum())
        return float(self.lam_e + self.source_to_node.sum() + self.gossip.sum() + pairs)


def build_rates(config: NetworkConfig) -> RateSet:
    """Expand a symmetric config into per-pair rates.

    source_to_node[j] = lam/n for all j; gossip per topology (all-zero for
    DC, lam/(n-1) off-diagonal for FC); mobility lam/f(n) for every unordered
    pair over {source} + nodes when mobility is enabled, else all-zero.
    """
    n, lam = config.n, config.lam
    src = np.full(n, lam / n)
    if config.topology is Topology.FULLY_CONNECTED and n > 1:
        gos = np.full((n, n), lam / (n - 1))
        np.fill_diagonal(gos, 0.0)
    else:
        gos = np.zeros((n, n))
    if config.mobility_enabled:
        mob = np.full((n + 1, n + 1), lam / config.f())
        np.fill_diagonal(mob, 0.0)
    else:
        mob = np.zeros((n + 1, n + 1))
    return RateSet(source_to_node=src, gossip=gos, mobility=mob, lam_e=config.lam_e)


# --- JSON config loading ----------------------------------------------------

_TOP_KEYS = {"n", "lambda_e", "lambda", "topology", "scaling", "mobility"}
_SCALING_KEYS = {"kind", "c"}
_KIND_MAP = {"linear": ScalingKind.LINEAR, "log": ScalingKind.LOG, "const": ScalingKind.CONST}
_TOPO_MAP = {"dc": Topology.DISCONNECTED, "fc": Topology.FULLY_CONNECTED}


def config_from_dict(doc: dict) -> NetworkConfig:
    """Build a NetworkConfig from a parsed JSON document. Unknown keys are rejected."""
    if not isinstance(doc, dict):
        raise ConfigError(f"config document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise ConfigError(f"missing config keys: {sorted(missing)}")
    sdoc = doc["scaling"]
    if not isinstance(sdoc, dict):
        raise ConfigError("scaling must be an object with keys 'kind' and optional 'c'")
    sunknown = set(sdoc) - _SCALING_KEYS
    if sunknown:
        raise ConfigError(f"unknown scaling keys: {sorted(sunknown)}")
    kind_str = sdoc.get("kind")
    if kind_str not in _KIND_MAP:
        raise ConfigError(f"scaling kind must be one of {sorted(_KIND_MAP)}, got {kind_str!r}")
    kind = _KIND_MAP[kind_str]
    if kind is not ScalingKind.LINEAR and "c" not in sdoc:
        raise ConfigError(f"scaling kind {kind_str!r} requires 'c'")
    scaling = MobilityScaling(kind, float(sdoc.get("c", 1.0)))
    topo_str = doc["topology"]
    if topo_str not in _TOPO_MAP:
        raise ConfigError(f"topology must be 'dc' or 'fc', got {topo_str!r}")
    if not isinstance(doc["mobility"], bool):
        raise ConfigError("mobility must be a boolean")
    if not isinstance(doc["n"], int) or isinstance(doc["n"], bool):
        raise ConfigError(f"n must be an integer, got {doc['n']!r}")
    return NetworkConfig(
        n=doc["n"],
        lam_e=float(doc["lambda_e"]),
        lam=float(doc["lambda"]),
        topology=_TOPO_MAP[topo_str],
        scaling=scaling,
        mobility_enabled=doc["mobility"],
    )


def load_config(path: str | Path) -> NetworkConfig:
    """Load a NetworkConfig from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return config_from_dict(doc)
