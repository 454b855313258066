"""Acceptance gate: every exit criterion at its stated tolerance.

Each test covers one criterion and finishes by printing one PASS line with
the measured margins (run with ``pytest -v -s`` to see them inline).
"""
import math
import time

import numpy as np
import pytest

from gossip_age import (
    Event,
    EventKind,
    MobilityScaling,
    NetworkConfig,
    ScalingKind,
    SimState,
    Topology,
    SOURCE,
    apply_event,
    build_rates,
    cost_j,
    k_constant,
    monte_carlo,
    optimal_cost,
    optimal_lambda,
    solve_subset_dp,
    upper_bound_v1,
    v_closed_form_dc_linear,
    v_exchange_dc,
    v_n_terminal,
    v_symmetric,
)
from gossip_age.cli import main as cli_main

LIN = MobilityScaling(ScalingKind.LINEAR)
LOG5 = MobilityScaling(ScalingKind.LOG, 5.0)
CONST5 = MobilityScaling(ScalingKind.CONST, 5.0)
DC, FC = Topology.DISCONNECTED, Topology.FULLY_CONNECTED
SIX_CASES = [(topo, sc) for topo in (DC, FC) for sc in (LIN, LOG5, CONST5)]
RATIOS = (0.5, 1.0, 2.0, 5.0)


def cfg(n, lam_e=1.0, lam=1.0, topo=DC, scaling=LIN):
    return NetworkConfig(n=n, lam_e=lam_e, lam=lam, topology=topo, scaling=scaling)


def test_exact_value_anchors_for_terminal_age():
    """v_n closed forms reproduce the per-scaling fixed-point formulas to 1e-12."""
    worst = 0.0
    for n in (2, 3, 5, 10, 50, 500):
        for lam_e in RATIOS:
            for lam in (0.5, 1.0, 3.0):
                for c in (1.0, 5.0):
                    got = v_n_terminal(cfg(n, lam_e, lam))
                    want = lam_e / (2 * lam)
                    worst = max(worst, abs(got - want))
                    assert got == pytest.approx(want, abs=1e-12)

                    got = v_n_terminal(cfg(n, lam_e, lam,
                                           scaling=MobilityScaling(ScalingKind.LOG, c)))
                    want = c * lam_e * math.log(n) / (lam * (n + c * math.log(n)))
                    worst = max(worst, abs(got - want))
                    assert got == pytest.approx(want, abs=1e-12)

                    got = v_n_terminal(cfg(n, lam_e, lam,
                                           scaling=MobilityScaling(ScalingKind.CONST, c)))
                    want = c * lam_e / (lam * (c + n))
                    worst = max(worst, abs(got - want))
                    assert got == pytest.approx(want, abs=1e-12)
    print(f"\nACCEPTANCE terminal-age anchors: PASS (max |err| = {worst:.2e})")


def test_closed_form_equals_recursion():
    """Closed-form DC/linear v1 equals the recursion to 1e-12 for n = 2..100."""
    worst = 0.0
    for n in range(2, 101):
        closed = v_closed_form_dc_linear(n, 1.0, 1.0)
        rec = v_symmetric(cfg(n)).v1
        worst = max(worst, abs(closed - rec) / rec)
        assert closed == pytest.approx(rec, rel=1e-12)
    assert v_closed_form_dc_linear(2, 1, 1) == pytest.approx(5 / 6, rel=1e-12)
    assert v_closed_form_dc_linear(4, 1, 1) == pytest.approx(77 / 60, rel=1e-12)
    print(f"\nACCEPTANCE closed form vs recursion: PASS (max rel err = {worst:.2e})")


def test_subset_dp_equals_symmetric_recursion():
    """General subset solver collapses to the cardinality recursion on all six
    symmetric cases for n = 2..12, every cardinality, rel err <= 1e-10, <10 s."""
    t0 = time.time()
    worst = 0.0
    for topo, scaling in SIX_CASES:
        for n in range(2, 13):
            c = cfg(n, lam_e=2.0, topo=topo, scaling=scaling)
            table = solve_subset_dp(build_rates(c))
            prof = v_symmetric(c)
            for mask in range(1, 1 << n):
                j = bin(mask).count("1")
                rel = abs(table.values[mask] - prof.age(j)) / prof.age(j)
                worst = max(worst, rel)
            assert worst <= 1e-10
    elapsed = time.time() - t0
    assert elapsed < 10.0
    print(f"\nACCEPTANCE subset-DP oracle equivalence: PASS "
          f"(max rel err = {worst:.2e}, {elapsed:.1f} s)")


def test_simulation_matches_theory_on_desk_grid():
    """All 48 (topology, scaling, n, ratio) cells: Monte Carlo mean within
    3 CI half-widths of the exact value; T = 1e6/lam_e, 10 replications."""
    t0 = time.time()
    failures = []
    worst_z = 0.0
    for topo, scaling in SIX_CASES:
        for n in (4, 16):
            for ratio in RATIOS:
                c = cfg(n, lam_e=ratio, topo=topo, scaling=scaling)
                theory = v_symmetric(c).v1
                est = monte_carlo(c, horizon=1e6 / ratio, replications=10,
                                  base_seed=20_000)
                dev = abs(est.mean - theory)
                z_hw = dev / est.half_width_95
                worst_z = max(worst_z, z_hw)
                line = (f"  {topo.value} {scaling.kind.value:6s} n={n:<3d} "
                        f"lam_e/lam={ratio:<4} theory={theory:.6f} "
                        f"sim={est.mean:.6f}+/-{est.half_width_95:.6f} "
                        f"dev/hw={z_hw:.2f}")
                print(line)
                if dev > 3.0 * est.half_width_95:
                    failures.append(line)
    elapsed = time.time() - t0
    assert not failures, f"{len(failures)}/48 cells outside 3 half-widths:\n" + "\n".join(failures)
    assert elapsed < 600.0, f"desk grid took {elapsed:.0f} s (budget 600 s)"
    print(f"ACCEPTANCE simulation vs theory: PASS "
          f"(48/48 cells, worst dev/hw = {worst_z:.2f}, {elapsed:.0f} s)")


def test_exchange_mobility_invariance():
    """DC exchange simulation matches n lam_e/lam at every swap rate, and the
    estimates across swap rates are statistically indistinguishable."""
    lam_ms = (0.0, 1.0, 10.0)
    for n in (4, 10):
        theory = v_exchange_dc(n, 1.0, 1.0)
        ests = {}
        for lam_m in lam_ms:
            est = monte_carlo(cfg(n), horizon=1e5, replications=10,
                              base_seed=31_000, exchange=True, lambda_m=lam_m)
            ests[lam_m] = est
            dev = abs(est.mean - theory)
            print(f"  exchange n={n} lam_m={lam_m}: sim={est.mean:.4f}"
                  f"+/-{est.half_width_95:.4f} theory={theory}")
            assert dev <= 3.0 * est.half_width_95
        for a in lam_ms:
            for b in lam_ms:
                if a < b:
                    se_a = ests[a].half_width_95 / 1.959963984540054
                    se_b = ests[b].half_width_95 / 1.959963984540054
                    z = abs(ests[a].mean - ests[b].mean) / math.hypot(se_a, se_b)
                    assert z <= 3.0, (n, a, b, z)
    print("ACCEPTANCE exchange-mobility invariance: PASS")


def test_scaling_bounds_hold_on_log_grid():
    """Exact v1 never exceeds the closed-form bound, all six cases,
    n in {2, 4, ..., 2048}."""
    ns = [2 ** k for k in range(1, 12)]
    checked = 0
    min_slack = math.inf
    for topo, scaling in SIX_CASES:
        for n in ns:
            for ratio in RATIOS:
                v1 = v_symmetric(cfg(n, lam_e=ratio, topo=topo, scaling=scaling)).v1
                bound = upper_bound_v1(scaling, topo, n, ratio, 1.0)
                assert v1 <= bound, (topo, scaling, n, ratio, v1, bound)
                min_slack = min(min_slack, bound - v1)
                checked += 1
    print(f"\nACCEPTANCE scaling bound suite: PASS "
          f"({checked} points, min slack = {min_slack:.3e})")


def test_coupling_order_fc_at_most_dc():
    """Exact inequality v1(FC) <= v1(DC) on the full tested grid."""
    checked = 0
    for scaling in (LIN, LOG5, CONST5):
        for n in [2 ** k for k in range(1, 12)]:
            for ratio in RATIOS:
                v_dc = v_symmetric(cfg(n, lam_e=ratio, topo=DC, scaling=scaling)).v1
                v_fc = v_symmetric(cfg(n, lam_e=ratio, topo=FC, scaling=scaling)).v1
                assert v_fc <= v_dc, (scaling, n, ratio)
                checked += 1
    print(f"\nACCEPTANCE coupling order (FC <= DC): PASS ({checked} points)")


def test_cost_optimizer_identities_and_ordering():
    """lam* and J* identities at 1e-12; J(lam*) global minimum over 1000
    random triples; K ordering const <= log <= linear on the c = 1 grid."""
    rng = np.random.default_rng(777)
    for _ in range(1000):
        alpha = rng.uniform(0.01, 0.99)
        k = 10.0 ** rng.uniform(-3, 3)
        lam = 10.0 ** rng.uniform(-3, 3)
        lstar = optimal_lambda(alpha, k)
        jstar = optimal_cost(alpha, k)
        assert lstar == pytest.approx(math.sqrt(alpha * k / (1 - alpha)), rel=1e-12)
        assert jstar == pytest.approx(2 * math.sqrt(alpha * (1 - alpha) * k), rel=1e-12)
        assert jstar <= cost_j(alpha, k, lam) * (1 + 1e-12)
        assert cost_j(alpha, k, lstar) == pytest.approx(jstar, rel=1e-12)
    log1 = MobilityScaling(ScalingKind.LOG, 1.0)
    const1 = MobilityScaling(ScalingKind.CONST, 1.0)
    for n in [3] + [2 ** k for k in range(2, 11)] + [1000]:
        for lam_e in RATIOS:
            k_c = k_constant(const1, n, lam_e)
            k_g = k_constant(log1, n, lam_e)
            k_l = k_constant(LIN, n, lam_e)
            assert k_c <= k_g <= k_l, (n, lam_e)
    print("\nACCEPTANCE cost optimizer: PASS (1000 triples, K ordering on c=1 grid)")


def test_reset_map_branches_and_invariant():
    """Every transition branch, the contact-merge minimum example, and the
    node-never-leads-source invariant over 1e5 random events."""
    st = SimState(5, (3, 1))
    assert apply_event(st, Event(EventKind.CONTACT_MEET, i=0, j=1)).versions == (3, 3)
    assert apply_event(st, Event(EventKind.SOURCE_PUSH, j=1)).versions == (3, 5)
    assert apply_event(st, Event(EventKind.GOSSIP, i=1, j=0)).versions == (3, 1)
    assert apply_event(st, Event(EventKind.GOSSIP, i=0, j=1)).versions == (3, 3)
    assert apply_event(st, Event(EventKind.SOURCE_SELF_UPDATE)).source_version == 6
    assert apply_event(st, Event(EventKind.CONTACT_MEET, i=SOURCE, j=1)).versions == (3, 5)
    assert apply_event(st, Event(EventKind.EXCHANGE_SWAP, i=0, j=1)).versions == (1, 3)

    n = 5
    rng = np.random.default_rng(4242)
    state = SimState(0, (0,) * n)
    kinds = [EventKind.SOURCE_SELF_UPDATE, EventKind.SOURCE_PUSH, EventKind.GOSSIP,
             EventKind.CONTACT_MEET, EventKind.EXCHANGE_SWAP]
    for _ in range(100_000):
        kind = kinds[rng.integers(len(kinds))]
        if kind is EventKind.SOURCE_SELF_UPDATE:
            ev = Event(kind)
        elif kind is EventKind.SOURCE_PUSH:
            ev = Event(kind, j=int(rng.integers(n)))
        elif kind is EventKind.CONTACT_MEET:
            i, j = rng.choice(n + 1, size=2, replace=False) - 1
            ev = Event(kind, i=int(i), j=int(j))
        else:
            i, j = rng.choice(n, size=2, replace=False)
            ev = Event(kind, i=int(i), j=int(j))
        state = apply_event(state, ev)
        assert all(v <= state.source_version for v in state.versions)
    print("\nACCEPTANCE reset map: PASS (all branches, 1e5-event invariant)")


def test_csv_determinism_independent_of_parallelism(tmp_path):
    """Identical spec + seed give byte-identical CSV whatever the worker
    count; repeated runs are byte-identical too."""
    base = ["simulate", "--n", "4", "--topology", "fc", "--scaling", "const",
            "--c", "5", "--horizon", "5000", "--reps", "6", "--seed", "97",
            "--per-rep"]
    blobs = []
    for name, extra in [("one", []), ("again", []), ("parallel", ["--workers", "4"])]:
        out = tmp_path / f"{name}.csv"
        assert cli_main(base + ["--out", str(out)] + extra) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]
    print("\nACCEPTANCE CSV determinism: PASS (rerun and workers=4 byte-identical)")
