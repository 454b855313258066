"""How the single-node age scales with network size under each mobility law.

For every case the exact value stays under its closed-form bound, and the
ratio against the asymptotic envelope (ln n, (ln n)^2/n, or ln n/n) stays
bounded, which is the numerical content of the scaling results.
"""
from gossip_age import (
    MobilityScaling, ScalingKind, Topology, asymptotic_envelope, scaling_sweep,
)

NS = [2 ** k for k in range(1, 12)]

for kind, c, envelope in [
    (ScalingKind.LINEAR, 1.0, "ln n"),
    (ScalingKind.LOG, 5.0, "(ln n)^2 / n"),
    (ScalingKind.CONST, 5.0, "ln n / n"),
]:
    scaling = MobilityScaling(kind, c)
    for topo in (Topology.DISCONNECTED, Topology.FULLY_CONNECTED):
        report = scaling_sweep(scaling, topo, NS, 1.0, 1.0)
        print(f"\nf(n) {kind.value} (c={c}), {topo.value}, envelope {envelope}:")
        print(f"  {'n':>5} {'v1 exact':>10} {'bound':>10} {'v1/g(n)':>9}")
        for n, v1, bound in report.samples:
            print(f"  {n:>5} {v1:>10.5f} {bound:>10.5f} {v1 / asymptotic_envelope(scaling, n):>9.4f}")
        print(f"  max ratio over the grid: {report.max_ratio:.4f}")
