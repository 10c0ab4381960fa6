"""Quantized channel inversion (QCI): zero-force, degrade the per-entry
noise levels onto a quantile grid, and spend link bits on the level indices
plus the compressed signal. Also compares the joint entropy of the levels
with the per-entry sum the scheme actually pays."""

from bottleneck_mimo import (
    McConfig,
    SystemParams,
    mc_joint_entropy,
    mc_sum_entropy,
    noise_quantile_grid,
    qci_bound_quantile,
)

p = SystemParams.from_snr_db(2, 4, 10.0, 16.0)
print("quantile grids and rates at K=2, M=4, 10 dB, C=16:")
for B in (1, 2, 3):
    grid = noise_quantile_grid(p, B)
    r = qci_bound_quantile(p, B)
    pts = ", ".join(f"{x:.3f}" for x in grid.finite_points)
    print(f"  B={B}: levels [{pts}, inf], H0={grid.entropy_H0:.1f} bits"
          f" -> rate {r.value:.4f} ({r.aux['active_levels']} active)")

print()
print("side-information cost: joint vs per-entry entropy coding (K=2, B=2):")
cfg = McConfig(samples=200_000, seed=3)
for M in (2, 4, 8, 16):
    q = SystemParams(2, M, 1.0, 16.0)
    grid = noise_quantile_grid(q, 2)
    hj = mc_joint_entropy(q, grid, cfg)
    hs = mc_sum_entropy(q, grid, cfg)
    print(f"  M={M:3d}: H_joint = {hj.mean:.4f}  H_sum = {hs.mean:.4f}"
          f"  overhead of separate coding = {hs.mean - hj.mean:.4f} bits")
print("the gap closes as M grows: the noise levels decorrelate.")
