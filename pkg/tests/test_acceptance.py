"""Acceptance suite.

One test per acceptance criterion, each printing a PASS/FAIL line with the
measured quantity. The dominance grid is evaluated once and shared by the
criteria that consume it.

The many-antenna proxy criterion (K=1, M=1000, rho=1, C=8 within 0.16 bits
of C) is implemented exactly as stated and is expected to fail: the exact
bound at those parameters is 7.6725 bits (deficit 0.3275), which two
independent routes confirm (adaptive quadrature of the water-filled rate,
and the closed many-antenna limit log2((1+rho*M)/(1+rho*M*2^-C)) = 7.6726).
The stated tolerance would require M of roughly 2200 or more at rho = 1.
"""

import numpy as np
import pytest
from scipy import stats as sps

from bottleneck_mimo import (
    DivergentStatistic,
    EigDensity,
    McConfig,
    SystemParams,
    capacity,
    mc_joint_entropy,
    mc_sum_entropy,
    mc_trunc_stats,
    mmse_bound,
    ndt_bound,
    noise_cdf,
    noise_grid_pmf,
    qci_bound_quantile,
    qci_rate,
    sample_eigenvalues,
    solve_monotone,
    tci_bound,
    tci_closed_form_zero_threshold,
    tci_rate,
    trunc_stats,
    upper_bound,
)
from bottleneck_mimo.cli import main as cli_main
from bottleneck_mimo.wishart import _trunc_prob_determinant


def report(name: str, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    return ok


# --- criterion: density sanity -------------------------------------------------


def test_density_sanity_all_dims():
    worst_norm, worst_mean = 0.0, 0.0
    for K in range(1, 9):
        for M in range(1, 9):
            d = EigDensity(min(K, M), max(K, M))
            worst_norm = max(worst_norm, abs(d.expect(lambda lam: 1.0) - 1.0))
            worst_mean = max(worst_mean, abs(d.expect(lambda lam: lam) - d.S) / d.S)
    ok = worst_norm <= 1e-10 and worst_mean <= 1e-8
    assert report(
        "density_normalization_and_mean",
        ok,
        f"max |int f - 1| = {worst_norm:.2e}, max rel mean err = {worst_mean:.2e}",
    )


@pytest.mark.parametrize("K,M", [(1, 1), (2, 2), (2, 4), (4, 4)])
def test_density_sampling_ks(K, M):
    p = SystemParams(K, M, 1.0, 8.0)
    n_draws = int(np.ceil(100_000 / p.T))
    eigs = sample_eigenvalues(np.random.default_rng(1234 + K + 10 * M), p, n_draws).ravel()
    F = EigDensity(p.T, p.S).cdf_interpolator()
    res = sps.kstest(eigs, F)
    ok = res.pvalue > 0.01
    assert report(f"density_ks_{K}x{M}", ok, f"n={eigs.size}, p-value={res.pvalue:.4f}")


# --- criterion: informed-receiver bound limits ---------------------------------


def test_upper_bound_large_c_reaches_capacity():
    p0 = SystemParams.from_snr_db(2, 2, 10.0, 1.0)
    cap = capacity(p0)
    p = SystemParams.from_snr_db(2, 2, 10.0, 10.0 * cap)
    val = upper_bound(p).value
    rel = abs(val - cap) / cap
    assert report("upper_bound_c_limit", rel < 0.01, f"|R-cap|/cap = {rel:.2e}")


def test_upper_bound_many_antenna_proxy():
    # stated criterion: |R - 8| < 0.16 bits at K=1, M=1000, rho=1, C=8.
    # The exact value of the bound here is ~7.6725 (see module docstring),
    # so this criterion fails by construction of the target number.
    p = SystemParams(1, 1000, 1.0, 8.0)
    val = upper_bound(p).value
    gap = abs(val - 8.0)
    limit = np.log2((1.0 + 1000.0) / (1.0 + 1000.0 * 2.0**-8))
    ok = gap < 0.16
    report(
        "upper_bound_many_antenna_proxy",
        ok,
        f"R = {val:.4f}, |R-8| = {gap:.4f}, closed limit formula gives {limit:.4f}",
    )
    assert ok, (
        f"criterion unattainable: exact bound {val:.4f} sits {gap:.4f} bits "
        f"below C; the closed many-antenna limit formula gives {limit:.4f}"
    )


# --- criteria: dominance grid + water-fill residuals ---------------------------

GRID_KM = (1, 2, 4)
GRID_RHO_DB = (0.0, 10.0, 20.0, 40.0)
GRID_C = (8.0, 16.0, 32.0, 48.0)


@pytest.fixture(scope="module")
def dominance_grid():
    cells = []
    for km in GRID_KM:
        for rho_db in GRID_RHO_DB:
            for C in GRID_C:
                p = SystemParams.from_snr_db(km, km, rho_db, C)
                seed = int(np.random.SeedSequence((97, km, int(rho_db), int(C))).generate_state(1)[0])
                ub = upper_bound(p)
                ndt = ndt_bound(p)
                mmse = mmse_bound(p)
                qci = qci_bound_quantile(p, 1)
                tci = tci_bound(p, McConfig(samples=100_000, seed=seed))
                cells.append({"p": p, "ub": ub, "ndt": ndt, "mmse": mmse,
                              "qci": qci, "tci": tci})
    return cells


def test_dominance_grid(dominance_grid):
    worst_gap, worst_cap, worst_at = -np.inf, -np.inf, ""
    for cell in dominance_grid:
        p, ub = cell["p"], cell["ub"].value
        for name in ("ndt", "mmse", "qci"):
            v = cell[name].value
            if v - ub > worst_gap:
                worst_gap, worst_at = v - ub, f"{name}@K={p.K},rho={p.rho_db:.0f},C={p.C:.0f}"
            worst_cap = max(worst_cap, v - p.C)
        tci = cell["tci"]
        se = tci.aux.get("std_error", 0.0)
        tci_gap = tci.value - ub - 3.0 * se
        if tci_gap > worst_gap:
            worst_gap, worst_at = tci_gap, f"tci@K={p.K},rho={p.rho_db:.0f},C={p.C:.0f}"
        worst_cap = max(worst_cap, tci.value - p.C, ub - p.C)
    ok = worst_gap <= 1e-6 and worst_cap <= 1e-9
    assert report(
        "dominance_grid",
        ok,
        f"worst bound-vs-ub excess {worst_gap:.2e} ({worst_at}), "
        f"worst value-vs-C excess {worst_cap:.2e}",
    )


def test_waterfill_residuals(dominance_grid):
    worst = 0.0
    for cell in dominance_grid:
        p = cell["p"]
        budget_ub = p.C / p.T
        worst = max(worst, cell["ub"].residual / max(1.0, budget_ub))
        ndt = cell["ndt"]
        if ndt.value > 0:
            worst = max(worst, ndt.residual / max(1.0, ndt.aux["budget_per_dim"]))
        qci = cell["qci"]
        budget_qci = p.C - p.K * qci.aux["H0"]
        worst = max(worst, qci.residual / max(1.0, budget_qci))
    ok = worst <= 1e-8
    assert report("waterfill_residuals", ok, f"worst relative residual {worst:.2e}")


def test_monotonicity_along_sweeps(dominance_grid):
    """Bound-module invariant (not a stated criterion): every bound is
    nondecreasing in C and in SNR along the grid, within 3 sigma for the
    sampled truncated-inversion path."""
    cells = {(c["p"].K, round(c["p"].rho_db), c["p"].C): c for c in dominance_grid}
    worst = -np.inf
    for km in GRID_KM:
        for scheme in ("ub", "ndt", "qci", "mmse", "tci"):
            for rho in GRID_RHO_DB:
                seq = [cells[(km, round(rho), C)] for C in GRID_C]
                worst = max(worst, _worst_decrease(seq, scheme))
            for C in GRID_C:
                seq = [cells[(km, round(r), C)] for r in GRID_RHO_DB]
                worst = max(worst, _worst_decrease(seq, scheme))
    ok = worst <= 1e-9
    assert report("monotonicity", ok, f"worst tolerance-adjusted decrease {worst:.2e}")


def _worst_decrease(seq, scheme):
    worst = -np.inf
    for a, b in zip(seq, seq[1:]):
        ra, rb = a[scheme], b[scheme]
        band = 3.0 * (ra.aux.get("std_error", 0.0) + rb.aux.get("std_error", 0.0))
        worst = max(worst, ra.value - rb.value - band)
    return worst


# --- criterion: QCI brute-force oracle ------------------------------------------


def test_qci_brute_force_oracle():
    p = SystemParams.from_snr_db(2, 4, 10.0, 12.0)
    # three-level grid at the terciles of the noise-level law
    tercile = [
        float(np.exp(solve_monotone(lambda t: noise_cdf(p, np.exp(t)), q, (-6.0, 1.0))))
        for q in (1 / 3, 2 / 3)
    ]
    grid = noise_grid_pmf(p, tercile + [np.inf])
    solved = qci_rate(p, grid)
    K = p.K
    P1, P2 = grid.pmf[0], grid.pmf[1]
    s1, s2 = 1.0 / grid.points[0], 1.0 / grid.points[1]
    budget = p.C - K * grid.entropy_H0

    def objective(c1):
        c2 = (budget - K * P1 * c1) / (K * P2)
        if c2 < 0.0:
            return -np.inf
        return K * P1 * (np.log2(1 + s1) - np.log2(1 + s1 * 2.0**-c1)) + K * P2 * (
            np.log2(1 + s2) - np.log2(1 + s2 * 2.0**-c2)
        )

    c1_grid = np.linspace(0.0, budget / (K * P1), 8_000_000)
    c2_grid = (budget - K * P1 * c1_grid) / (K * P2)
    feasible = c2_grid >= 0.0
    r1 = np.log2(1 + s1) - np.log2(1 + s1 * 2.0 ** -c1_grid[feasible])
    r2 = np.log2(1 + s2) - np.log2(1 + s2 * 2.0 ** -c2_grid[feasible])
    brute = float(np.max(K * P1 * r1 + K * P2 * r2))
    gap = abs(solved.value - brute)
    ok = solved.value >= brute - 1e-4 and gap <= 1e-4
    assert report("qci_brute_force", ok, f"solver {solved.value:.6f}, grid max {brute:.6f}")


# --- criterion: TCI consistency --------------------------------------------------


def test_tci_mc_matches_closed_form():
    p = SystemParams(2, 4, 1.0, 8.0)
    closed, _, _ = tci_closed_form_zero_threshold(p)
    stats = mc_trunc_stats(p, 0.0, McConfig(samples=1_000_000, seed=51))
    sampled, r_lo, r_hi = tci_rate(p, 0.0, stats)
    se = max(sampled.aux["std_error"], 1e-6)
    gap = abs(sampled.value - closed.value)
    ok = gap < 3 * se and r_lo <= sampled.value + 1e-9 <= r_hi + 2e-9
    assert report(
        "tci_mc_vs_closed_form",
        ok,
        f"closed {closed.value:.5f}, mc {sampled.value:.5f} (se {se:.2e}), "
        f"sandwich [{r_lo:.5f}, {r_hi:.5f}]",
    )


def test_tci_sandwich_everywhere_tested():
    cases = [
        (SystemParams.from_snr_db(4, 4, 10.0, 40.0), 0.05),
        (SystemParams.from_snr_db(2, 2, 0.0, 16.0), 0.3),
        (SystemParams.from_snr_db(2, 6, 20.0, 24.0), 0.0),
    ]
    worst = -np.inf
    for p, th in cases:
        stats = trunc_stats(p, th, McConfig(samples=100_000, seed=53))
        r, lo, hi = tci_rate(p, th, stats)
        worst = max(worst, lo - r.value, r.value - hi)
    ok = worst <= 1e-9
    assert report("tci_sandwich", ok, f"worst ordering violation {worst:.2e}")


def test_tci_square_zero_threshold_raises():
    p = SystemParams(2, 2, 1.0, 8.0)
    try:
        trunc_stats(p, 0.0)
        ok = False
    except DivergentStatistic:
        ok = True
    assert report("tci_divergent_statistic", ok, "DivergentStatistic raised")


# --- criterion: truncation probability cross-check ------------------------------


def test_pth_cross_check():
    cases = [(1, 3, 2.0), (2, 2, 0.1), (2, 4, 0.5), (4, 4, 0.05)]
    detail = []
    ok = True
    for K, M, th in cases:
        p = SystemParams(K, M, 1.0, 8.0)
        det = _trunc_prob_determinant(K, M, th)
        mc = mc_trunc_stats(p, th, McConfig(samples=400_000, seed=61 + K))
        ok &= abs(mc.p_th - det) < 3 * mc.std_errors["p_th"]
        if K == M:
            closed = np.exp(-th * K)
            ok &= abs(det - closed) < 1e-10
        detail.append(f"({K},{M},{th}): det={det:.6f}, mc={mc.p_th:.6f}")
    assert report("pth_cross_check", ok, "; ".join(detail))


# --- criterion: entropy comparison ----------------------------------------------


def test_entropy_comparison():
    from bottleneck_mimo import noise_quantile_grid

    cfg = McConfig(samples=1_000_000, seed=71)
    gaps = {}
    ses = {}
    for M in (2, 8):
        p = SystemParams(2, M, 1.0, 8.0)
        grid = noise_quantile_grid(p, 2)
        hj = mc_joint_entropy(p, grid, cfg)
        hs = mc_sum_entropy(p, grid, cfg)
        gaps[M] = hs.mean - hj.mean
        ses[M] = float(np.hypot(hj.std_error, hs.std_error))
    ok_order = gaps[2] >= -3 * ses[2]  # H_joint <= H_sum at M = 2
    se_diff = float(np.hypot(ses[2], ses[8]))
    ok_shrink = gaps[8] < gaps[2] - 3 * se_diff
    ok = ok_order and ok_shrink
    assert report(
        "entropy_comparison",
        ok,
        f"gap(M=2) = {gaps[2]:.4f} +- {ses[2]:.4f}, gap(M=8) = {gaps[8]:.4f} +- {ses[8]:.4f}",
    )


# --- criterion: large-C scheme ordering ------------------------------------------


def test_large_c_ndt_ordering():
    p0 = SystemParams.from_snr_db(2, 2, 10.0, 1.0)
    cap = capacity(p0)
    p = SystemParams.from_snr_db(2, 2, 10.0, 20.0 * cap)
    ndt = ndt_bound(p).value
    qci = qci_bound_quantile(p, 2).value
    tci = tci_bound(p, McConfig(samples=100_000, seed=81))
    mmse = mmse_bound(p).value
    rival = max(qci, tci.value, mmse)
    slack = 3.0 * tci.aux.get("std_error", 0.0)
    ok = ndt >= rival - slack - 1e-9
    assert report(
        "large_c_ndt_ordering",
        ok,
        f"ndt {ndt:.4f} vs max(qci {qci:.4f}, tci {tci.value:.4f}, mmse {mmse:.4f})",
    )


# --- criterion: MMSE many-antenna limit -------------------------------------------


def test_mmse_many_antennas():
    p = SystemParams.from_snr_db(2, 512, 10.0, 12.0)
    val = mmse_bound(p).value
    gap = abs(val - 12.0)
    ok = gap < 0.24
    assert report("mmse_many_antennas", ok, f"R = {val:.4f}, |R-C| = {gap:.4f}")


# --- criterion: sweep determinism --------------------------------------------------


def test_sweep_determinism(tmp_path):
    args = ["sweep", "--axis", "rho_db", "--values", "0,10,20", "--k", "2", "--m", "2",
            "--c", "16", "--schemes", "ub,ndt,qci,tci,mmse", "--samples", "5000",
            "--seed", "7"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli_main(args + ["--output", str(a)]) == 0
    assert cli_main(args + ["--output", str(b)]) == 0
    ok = a.read_bytes() == b.read_bytes()
    assert report("sweep_determinism", ok, f"{a.stat().st_size} bytes, identical={ok}")
