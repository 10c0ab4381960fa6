"""Eigenvalue density of the channel Gram matrix: analytic series against
sampled spectra, plus the moment identities every bound relies on."""

import numpy as np

from bottleneck_mimo import EigDensity, SystemParams, sample_eigenvalues

for K, M in [(1, 1), (2, 2), (2, 4), (4, 8)]:
    d = EigDensity(min(K, M), max(K, M))
    norm = d.expect(lambda lam: 1.0)
    mean = d.expect(lambda lam: lam)
    print(f"K={K}, M={M}:  int f = {norm:.12f}   E[lam] = {mean:.10f}  (S = {d.S})")

print()
print("sampled spectrum vs analytic density, K=2, M=4:")
p = SystemParams(2, 4, 1.0, 8.0)
eigs = sample_eigenvalues(np.random.default_rng(0), p, 100_000).ravel()
d = EigDensity(2, 4)
edges = np.linspace(0, 12, 13)
counts, _ = np.histogram(eigs, bins=edges)
for lo, hi, c in zip(edges[:-1], edges[1:], counts):
    from scipy.integrate import quad

    mass, _ = quad(d.pdf, lo, hi)
    bar = "#" * int(60 * c / counts.max())
    print(f"  [{lo:4.1f},{hi:4.1f})  empirical {c / eigs.size:.4f}  analytic {mass:.4f}  {bar}")

print()
print("inverse moment (drives the channel-inversion schemes):")
print(f"  E[1/lam] = {d.expect(lambda lam: 1 / lam):.6f}  analytic 1/(M-K) = {1 / 2:.6f}")
