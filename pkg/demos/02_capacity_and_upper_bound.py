"""The informed-receiver bound: water-filling the link budget across fading
states, saturating at the link capacity C for small C and at the channel
capacity for large C."""

from bottleneck_mimo import SystemParams, capacity, upper_bound

K = M = 2
snr_db = 10.0
cap = capacity(SystemParams.from_snr_db(K, M, snr_db, 1.0))
print(f"channel capacity at K=M={K}, {snr_db:.0f} dB: {cap:.4f} bits/complex dim")
print()
print("   C      R_ub     water level   active fraction of budget")
for C in (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0):
    p = SystemParams.from_snr_db(K, M, snr_db, C)
    r = upper_bound(p)
    frac = r.value / min(C, cap)
    print(f"  {C:5.1f}  {r.value:8.4f}   {r.water_level:10.3e}   {frac:6.1%} of min(C, capacity)")

print()
print("small C: the bound tracks C (the link is the bottleneck);")
print("large C: it saturates at the channel capacity.")
