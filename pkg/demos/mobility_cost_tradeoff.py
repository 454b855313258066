"""The freshness-vs-mobility trade-off and its closed-form optimum.

J_alpha(lam) = alpha * age(lam) + (1 - alpha) * lam. Minimizing the
bound-based version gives lam* = sqrt(alpha K / (1 - alpha)) with minimum
2 sqrt(alpha (1 - alpha) K); the sweep shows the exact-cost argmin lands
close by, and that slower mobility decay (constant f) is cheapest.
"""
from gossip_age import (
    MobilityScaling, ScalingKind, Topology,
    cost_profile, cost_sweep, k_constant,
)

N, LAM_E, C = 1000, 1.0, 1.0
GRID = [0.05 * 1.12 ** k for k in range(50)]

print(f"disconnected network, n={N}, lam_e={LAM_E}, c={C}\n")
for kind in (ScalingKind.LINEAR, ScalingKind.LOG, ScalingKind.CONST):
    scaling = MobilityScaling(kind, C)
    k = k_constant(scaling, N, LAM_E)
    print(f"f(n) {kind.value:6s}  K = {k:.6f}")
    for alpha in (0.3, 0.5, 0.7):
        prof = cost_profile(alpha, k)
        rows = cost_sweep([alpha], GRID, scaling, Topology.DISCONNECTED, N, LAM_E)
        exact_arg = next(r for r in rows if r.is_argmin_exact)
        print(f"  alpha={alpha}: lam*={prof.lambda_star:.4f}  J*={prof.j_star:.4f}  "
              f"exact-cost argmin at lam={exact_arg.lam:.4f} (J={exact_arg.exact_cost:.4f})")
    print()

print("optimal cost ordering at alpha=0.5:")
for kind in (ScalingKind.CONST, ScalingKind.LOG, ScalingKind.LINEAR):
    k = k_constant(MobilityScaling(kind, C), N, LAM_E)
    print(f"  f(n) {kind.value:6s}: J* = {cost_profile(0.5, k).j_star:.5f}")
print("constant mobility is cheapest, linear costliest")
