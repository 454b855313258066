"""Steady-state version age of gossip networks with contact mobility.

A source versions itself at rate lam_e and pushes to n nodes; nodes gossip
over a disconnected or fully connected topology and additionally meet
pairwise (contact mobility) at rate lam/f(n), merging to the fresher
version on contact. This package computes the steady-state average version
age exactly (subset recursion and O(n) symmetric recursions), bounds its
scaling in n, simulates the process with an event-driven Monte Carlo engine,
and solves the freshness-vs-mobility cost trade-off.
"""

__version__ = "0.1.0"

from .core import (
    ConfigError,
    MobilityScaling,
    NetworkConfig,
    RateSet,
    ScalingKind,
    Topology,
    build_rates,
    config_from_dict,
    f_eval,
    load_config,
)
from .analytic import (
    SubsetAgeTable,
    SubsetCapError,
    SymmetricAgeProfile,
    UnreachableSubsetError,
    solve_subset_dp,
    v_closed_form_dc_linear,
    v_exchange_dc,
    v_n_terminal,
    v_symmetric,
)
from .scaling import ScalingReport, asymptotic_envelope, k_constant, scaling_sweep, upper_bound_v1
from .cost import (
    CostProfile,
    CostSweepRow,
    cost_j,
    cost_profile,
    cost_sweep,
    optimal_cost,
    optimal_lambda,
)
from .sim import (
    SOURCE,
    Event,
    EventKind,
    MonteCarloEstimate,
    SimResult,
    SimState,
    ZeroTotalRateError,
    apply_event,
    monte_carlo,
    run_replications,
    sample_next_event,
    simulate_contact,
    simulate_exchange,
    simulate_rates,
)

__all__ = [
    "__version__",
    "ConfigError", "MobilityScaling", "NetworkConfig", "RateSet", "ScalingKind",
    "Topology", "build_rates", "config_from_dict", "f_eval", "load_config",
    "SubsetAgeTable", "SubsetCapError", "SymmetricAgeProfile", "UnreachableSubsetError",
    "solve_subset_dp", "v_closed_form_dc_linear", "v_exchange_dc", "v_n_terminal",
    "v_symmetric",
    "ScalingReport", "asymptotic_envelope", "k_constant", "scaling_sweep", "upper_bound_v1",
    "CostProfile", "CostSweepRow", "cost_j", "cost_profile", "cost_sweep",
    "optimal_cost", "optimal_lambda",
    "SOURCE", "Event", "EventKind", "MonteCarloEstimate", "SimResult", "SimState",
    "ZeroTotalRateError", "apply_event", "monte_carlo", "run_replications",
    "sample_next_event", "simulate_contact", "simulate_exchange", "simulate_rates",
]
