"""Quantize-and-forward (NDT): spending link bits on the channel matrix
versus on the observation. The rate rises and then falls in the per-entry
distortion D, so the scheme optimizes D."""

import numpy as np

from bottleneck_mimo import SystemParams, ndt_bound, ndt_rate

p = SystemParams.from_snr_db(4, 4, 20.0, 40.0)
d_min = 2.0 ** (-p.C / (p.K * p.M))
print(f"K=M=4, 20 dB, C=40: D must lie in ({d_min:.4f}, 1]")
print()
print("     D       CSI bits    rate")
for d in np.geomspace(d_min * 1.02, 1.0, 12):
    r = ndt_rate(p, float(d))
    print(f"  {d:7.4f}   {r.aux['csi_bits']:8.2f}  {r.value:8.4f}")

best = ndt_bound(p)
print()
print(f"optimized: D* = {best.aux['D']:.4f} -> {best.value:.4f} bits/complex dim")
