"""The bound computations.

One informed-receiver upper bound and four achievable lower bounds on the
bottleneck rate, their optimizer wrappers, the closed-form special cases, and
the asymptotic limits each scheme approaches in C, SNR, and antenna count.
All values are in bits per complex dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InfeasibleDistortion,
    InsufficientAcceptance,
    InsufficientBottleneck,
    UnsupportedLimit,
)
from .model import BoundResult, SystemParams, binary_entropy, capacity
from .numerics import QuadratureSpec, maximize_scalar, solve_monotone
from .wishart import (
    EigDensity,
    QuantGrid,
    TruncStats,
    noise_quantile_grid,
    trunc_prob,
    trunc_stats,
)

__all__ = [
    "WaterfillSolution",
    "waterfill_continuous",
    "upper_bound",
    "ndt_rate",
    "ndt_bound",
    "qci_rate",
    "qci_bound_quantile",
    "tci_rate",
    "tci_closed_form_zero_threshold",
    "tci_bound",
    "mmse_bound",
    "asymptote",
]

LN2 = float(np.log(2.0))


@dataclass(frozen=True)
class WaterfillSolution:
    """Water level and per-dimension rate of a continuous water-filling solve."""

    nu: float
    rate: float
    budget: float
    residual: float


def waterfill_continuous(density, gain: float, budget_per_dim: float) -> WaterfillSolution:
    """Allocate a per-dimension compression budget across fading states.

    The water level nu solves
        int_{nu/gain}^inf log2(gain*lam/nu) f(lam) dlam = budget
    and the returned per-dimension rate is
        int_{nu/gain}^inf [log2(1+gain*lam) - log2(1+nu)] f(lam) dlam.
    A zero budget yields a zero rate (the water level is pushed to +inf).
    The solve runs in log(nu) because nu spans many decades across budget
    sweeps.
    """
    if budget_per_dim < 0:
        raise DomainError(f"budget must be >= 0, got {budget_per_dim}")
    if budget_per_dim == 0.0:
        return WaterfillSolution(nu=np.inf, rate=0.0, budget=0.0, residual=0.0)
    if gain <= 0:
        raise DomainError(f"gain must be positive, got {gain}")

    def spent(log_nu: float) -> float:
        nu = np.exp(log_nu)
        return density.expect(lambda lam: np.log2(gain * lam / nu), nu / gain)

    scale = getattr(density, "S", 1.0)
    t0 = np.log(gain * scale) - budget_per_dim * LN2
    log_nu = solve_monotone(spent, budget_per_dim, (t0 - 3.0, t0 + 3.0))
    nu = float(np.exp(log_nu))
    rate = density.expect(
        lambda lam: np.log2(1.0 + gain * lam) - np.log2(1.0 + nu), nu / gain
    )
    residual = abs(spent(log_nu) - budget_per_dim)
    return WaterfillSolution(nu=nu, rate=max(rate, 0.0), budget=budget_per_dim, residual=residual)


def upper_bound(params: SystemParams, spec: QuadratureSpec | None = None) -> BoundResult:
    """Bottleneck rate when the destination is handed the channel state for
    free: T parallel water-filled scalar problems under a C/T budget."""
    dens = EigDensity(params.T, params.S, spec=spec)
    w = waterfill_continuous(dens, params.rho, params.C / params.T)
    return BoundResult(
        value=params.T * w.rate,
        water_level=w.nu,
        aux={"budget_per_dim": w.budget},
        residual=w.residual,
        method="quadrature",
    )


def _ndt_feasibility(params: SystemParams) -> float:
    return 2.0 ** (-params.C / (params.K * params.M))


def ndt_rate(params: SystemParams, D: float, spec: QuadratureSpec | None = None) -> BoundResult:
    """Achievable rate when the relay forwards a quantized channel matrix
    (per-entry distortion D) plus a compressed observation.

    Quantizing the K*M channel entries costs K*M*log2(1/D) bits of the link,
    the rest feeds a water-filling solve at the degraded effective SNR
    gamma = (1-D)/(K*D + sigma2). D must exceed 2^(-C/(K*M)) or no budget
    remains for the observation.
    """
    if not 0.0 < D <= 1.0:
        raise DomainError(f"distortion must be in (0, 1], got {D}")
    d_min = _ndt_feasibility(params)
    if D <= d_min:
        raise InfeasibleDistortion(
            f"D = {D:g} <= 2^(-C/KM) = {d_min:g}: no budget left for the observation"
        )
    csi_bits = params.K * params.M * np.log2(1.0 / D)
    gamma = (1.0 - D) / (params.K * D + params.sigma2)
    if gamma == 0.0:  # D = 1: the forwarded channel estimate carries nothing
        return BoundResult(
            value=0.0, water_level=None,
            aux={"D": 1.0, "gamma": 0.0, "csi_bits": float(csi_bits)},
            residual=0.0, method="quadrature",
        )
    dens = EigDensity(params.T, params.S, spec=spec)
    budget = (params.C - csi_bits) / params.T
    w = waterfill_continuous(dens, gamma, budget)
    return BoundResult(
        value=params.T * w.rate,
        water_level=w.nu,
        aux={"D": float(D), "gamma": float(gamma), "csi_bits": float(csi_bits),
             "budget_per_dim": w.budget},
        residual=w.residual,
        method="quadrature",
    )


def ndt_bound(
    params: SystemParams,
    spec: QuadratureSpec | None = None,
    coarse_points: int = 128,
    refine_tol: float = 1e-5,
) -> BoundResult:
    """Best quantize-and-forward rate over the channel distortion D.

    The rate first rises and then falls in D, so a geometric coarse grid
    over the feasible interval followed by golden-section refinement (in
    log D) locates the peak.
    """
    if params.C == 0.0:
        return BoundResult(value=0.0, aux={"D": 1.0}, method="quadrature")
    d_min = _ndt_feasibility(params)
    lo = np.log(d_min * (1.0 + 1e-6))
    if not lo < 0.0:
        return BoundResult(value=0.0, aux={"D": 1.0}, method="quadrature")

    def objective(u: float) -> float:
        return ndt_rate(params, float(np.exp(u)), spec).value

    u_star, _ = maximize_scalar(objective, (lo, 0.0), coarse_points, refine_tol)
    d_star = float(np.exp(u_star))
    best = ndt_rate(params, d_star, spec)
    return BoundResult(
        value=best.value,
        water_level=best.water_level,
        aux=dict(best.aux, D=d_star),
        residual=best.residual,
        method="quadrature",
    )


def qci_rate(params: SystemParams, grid: QuantGrid, spec: QuadratureSpec | None = None) -> BoundResult:
    """Achievable rate of zero-forcing with noise levels degraded to a grid.

    The link first pays K*H0 bits to convey the quantized levels, then the
    remainder is water-filled across the finite levels: level j is active
    iff its SNR 1/b_j clears the water level, and the +inf sentinel level
    carries nothing.
    """
    if params.K > params.M:
        raise DomainError("quantized inversion requires K <= M")
    K = params.K
    budget = params.C - K * grid.entropy_H0
    if budget <= 0.0:
        raise InsufficientBottleneck(
            f"C = {params.C:g} <= K*H0 = {K * grid.entropy_H0:g}: "
            "the link is exhausted by the noise-level indices"
        )
    fin = np.asarray(grid.finite_points)
    pmf = np.asarray(grid.pmf[: len(fin)])
    if fin.size == 0 or pmf.sum() <= 0.0:
        return BoundResult(
            value=0.0, aux={"H0": grid.entropy_H0, "active_levels": 0},
            residual=0.0, method="closed_form",
        )
    snr = 1.0 / fin  # decreasing in j
    log2snr = np.log2(snr)
    nu = None
    active = 0
    for l in range(1, fin.size + 1):
        wsum = K * pmf[:l].sum()
        if wsum == 0.0:
            continue
        log2_nu = (K * np.sum(pmf[:l] * log2snr[:l]) - budget) / wsum
        cand = 2.0 ** log2_nu
        ok_active = snr[l - 1] > cand
        ok_rest = l == fin.size or snr[l] <= cand
        if ok_active and ok_rest:
            nu, active = float(cand), l
            break
    if nu is None:
        # budget so large every level is active; the last candidate applies
        wsum = K * pmf.sum()
        log2_nu = (K * np.sum(pmf * log2snr) - budget) / wsum
        nu, active = float(2.0 ** log2_nu), fin.size
    c = np.maximum(np.log2(snr / nu), 0.0)
    rate = float(np.sum(K * pmf * (np.log2(1.0 + snr) - np.log2(1.0 + snr * 2.0 ** (-c)))))
    residual = abs(float(np.sum(K * pmf * c)) - budget)
    return BoundResult(
        value=rate,
        water_level=nu,
        aux={
            "H0": float(grid.entropy_H0),
            "active_levels": active,
            "grid_points": [float(p) for p in grid.points],
            "pmf": [float(p) for p in grid.pmf],
            "c_bits": c.tolist(),
        },
        residual=residual,
        method="closed_form",
    )


def qci_bound_quantile(params: SystemParams, B: int, spec: QuadratureSpec | None = None) -> BoundResult:
    """Quantized inversion on the quantile grid with 2^B levels.

    The uniform pmf makes the active set searchable in closed form: try
    l = 1, 2, ... active levels until the water level from
        sum_{j<=l} log2(snr_j / nu) = J*C/K - J*B
    is consistent with exactly those levels being active. Requires B < C/K,
    otherwise the level indices alone would exhaust the link.
    """
    if params.K > params.M:
        raise DomainError("quantized inversion requires K <= M")
    if int(B) != B or B < 1:
        raise DomainError(f"B must be a positive integer, got {B}")
    if B >= params.C / params.K:
        raise InsufficientBottleneck(
            f"B = {B} >= C/K = {params.C / params.K:g}: no budget past the level indices"
        )
    grid = noise_quantile_grid(params, int(B), spec)
    J = grid.J
    fin = np.asarray(grid.finite_points)
    snr = 1.0 / fin
    log2snr = np.log2(snr)
    target = J * params.C / params.K - J * B
    nu, active = None, 0
    for l in range(1, fin.size + 1):
        log2_nu = log2snr[:l].mean() - target / l
        cand = 2.0 ** log2_nu
        if snr[l - 1] > cand and (l == fin.size or snr[l] <= cand):
            nu, active = float(cand), l
            break
    if nu is None:
        nu, active = float(2.0 ** (log2snr.mean() - target / fin.size)), fin.size
    rate = float(
        np.sum((params.K / J) * (np.log2(1.0 + snr[:active]) - np.log2(1.0 + nu)))
    )
    c = np.maximum(np.log2(snr / nu), 0.0)
    residual = abs(float(np.sum(params.K / J * c)) - (params.C - params.K * grid.entropy_H0))
    return BoundResult(
        value=rate,
        water_level=nu,
        aux={
            "B": int(B),
            "H0": float(grid.entropy_H0),
            "active_levels": active,
            "grid_points": [float(p) for p in grid.points],
        },
        residual=residual,
        method="closed_form",
    )


def _tci_terms(params: SystemParams, stats: TruncStats, spec: QuadratureSpec | None):
    """Distortion D and the three rate expressions for given truncation stats.

    Returns (D, R, R_lower, R_upper, se_R). The conditional expectation in R
    is taken on the same accepted sample the stats came from (Monte Carlo
    path) or by quadrature (closed-form path); se_R is a batch-means error
    for the Monte Carlo path, 0 otherwise.
    """
    s2 = params.sigma2
    K = params.K
    p, h = stats.p_th, stats.h_th
    exponent = (params.C - h) / (p * K)
    if exponent <= 0.0:
        raise InsufficientBottleneck(
            f"C = {params.C:g} does not exceed the truncation flag entropy {h:g}"
        )

    def distortion(e_inv, expo):
        # past ~2^1020 the budget per active state is unbounded in float64
        # terms and the distortion is exactly its C -> inf limit, zero
        if expo > 1020.0:
            return 0.0
        return (1.0 + s2 * e_inv) / (2.0 ** expo - 1.0)

    def rates(e_inv, e_lam, cond_mean_log):
        D = distortion(e_inv, exponent)
        base = np.log2(D + s2 * e_inv)
        R = p * K * (cond_mean_log(D) - base)
        R_lo = p * K * (np.log2(1.0 + D + s2 / e_lam) - base)
        R_hi = p * K * (np.log2(1.0 + D + s2 * e_inv) - base)
        return D, R, R_lo, R_hi

    if stats.method == "closed_form":
        dens = EigDensity(params.T, params.S, spec=spec)

        def cond_mean_log(D):
            return dens.expect(lambda lam: np.log2(1.0 + D + s2 / lam))

        D, R, R_lo, R_hi = rates(stats.e_inv_lambda, stats.e_lambda, cond_mean_log)
        return D, float(R), float(R_lo), float(R_hi), 0.0

    acc = stats.accepted

    def cond_mean_log(D):
        return float(np.mean(np.log2(1.0 + D + s2 / acc)))

    D, R, R_lo, R_hi = rates(stats.e_inv_lambda, stats.e_lambda, cond_mean_log)

    # batch-means error: push whole groups of raw batches through the same
    # pipeline so the nonlinear propagation (p_th -> D -> R) is captured
    groups = _group_slices(stats.batch_raw, stats.batch_accepted, max_groups=32)
    vals = []
    for raw_n, sl in groups:
        rows = acc[sl]
        if rows.shape[0] < 2:
            continue
        pg = rows.shape[0] / raw_n
        hg = binary_entropy(pg)
        eg = (params.C - hg) / (pg * K)
        if eg <= 0:
            continue
        Dg = distortion(float(np.mean(1.0 / rows)), eg)
        Rg = pg * K * (
            float(np.mean(np.log2(1.0 + Dg + s2 / rows)))
            - np.log2(Dg + s2 * float(np.mean(1.0 / rows)))
        )
        vals.append(Rg)
    if len(vals) >= 2:
        se = float(np.std(vals, ddof=1) / np.sqrt(len(vals)))
    else:
        se = 0.0
    return D, float(R), float(R_lo), float(R_hi), se


def _group_slices(batch_raw, batch_acc, max_groups: int):
    """Merge consecutive batches into at most max_groups groups; yields
    (raw_count, slice_into_accepted) pairs."""
    nb = len(batch_raw)
    per = max(1, int(np.ceil(nb / max_groups)))
    offsets = np.concatenate([[0], np.cumsum(batch_acc)])
    out = []
    for start in range(0, nb, per):
        stop = min(start + per, nb)
        out.append(
            (int(np.sum(batch_raw[start:stop])), slice(int(offsets[start]), int(offsets[stop])))
        )
    return out


def tci_rate(
    params: SystemParams,
    lambda_th: float,
    stats: TruncStats,
    spec: QuadratureSpec | None = None,
) -> tuple[BoundResult, float, float]:
    """Achievable rate of truncated zero-forcing at a fixed threshold.

    Inversion runs only when the smallest Gram eigenvalue clears lambda_th
    (probability p_th, flagged to the destination at h_th bits); the noisy
    estimate is then forwarded at distortion D chosen to fill the remaining
    budget. Returns the rate plus its Jensen lower and upper companions
    (R_lower <= value <= R_upper, within Monte Carlo error on the sampled
    path).
    """
    if abs(stats.lambda_th - lambda_th) > 1e-12 * max(1.0, abs(lambda_th)):
        raise DomainError(
            f"stats were computed at lambda_th={stats.lambda_th:g}, not {lambda_th:g}"
        )
    D, R, R_lo, R_hi, se = _tci_terms(params, stats, spec)
    aux = {
        "lambda_th": float(lambda_th),
        "D": float(D),
        "p_th": stats.p_th,
        "h_th": stats.h_th,
        "e_inv_lambda": stats.e_inv_lambda,
        "e_lambda": stats.e_lambda,
        "R_lower": R_lo,
        "R_upper": R_hi,
        "std_error": se,
    }
    if D > 0.0:
        residual = abs(
            stats.p_th * params.K
            * np.log2(1.0 + (1.0 + params.sigma2 * stats.e_inv_lambda) / D)
            - (params.C - stats.h_th)
        )
    else:
        residual = 0.0  # distortion pinned at its unbounded-budget limit
    result = BoundResult(
        value=R, water_level=None, aux=aux, residual=float(residual), method=stats.method
    )
    return result, R_lo, R_hi


def tci_closed_form_zero_threshold(
    params: SystemParams, spec: QuadratureSpec | None = None
) -> tuple[BoundResult, float, float]:
    """Truncated-inversion rate without truncation (threshold zero), K < M.

    Every draw is inverted, E[1/lambda] = 1/(M-K) and E[lambda] = M are
    exact, and only one quadrature remains. K = M is rejected: E[1/lambda]
    diverges without a positive threshold.
    """
    if params.K >= params.M:
        raise DomainError("the zero-threshold closed form requires K < M strictly")
    if params.C == 0.0:
        zero = BoundResult(value=0.0, aux={"lambda_th": 0.0, "D": np.inf}, method="closed_form")
        return zero, 0.0, 0.0
    stats = trunc_stats(params, 0.0)
    return tci_rate(params, 0.0, stats, spec)


def tci_bound(
    params: SystemParams,
    mc=None,
    th_policy: str = "auto",
    spec: QuadratureSpec | None = None,
    grid_size: int = 6,
) -> BoundResult:
    """Best truncated-inversion rate over the threshold.

    For K < M the rate is flat near zero threshold and then decays, so the
    zero-threshold closed form is evaluated alongside a coarse positive
    grid; for K = M the zero threshold is excluded (divergent) and only the
    positive grid is scanned, geometric over [1e-3, lambda_hi] with
    lambda_hi where the acceptance probability falls to 1 percent.
    """
    if params.K > params.M:
        raise DomainError("truncated inversion requires K <= M")
    if th_policy not in ("auto", "scan", "zero"):
        raise DomainError(f"unknown threshold policy {th_policy!r}")
    from .montecarlo import McConfig

    cfg = mc if mc is not None else McConfig()
    candidates: list[tuple[float, BoundResult]] = []
    if params.K < params.M and th_policy in ("auto", "zero"):
        res0, _, _ = tci_closed_form_zero_threshold(params, spec)
        candidates.append((0.0, res0))
    if th_policy != "zero":
        if params.K == params.M:
            lam_hi = np.log(100.0) / params.K
        else:
            lam_hi = float(
                np.exp(
                    solve_monotone(
                        lambda t: trunc_prob(params, float(np.exp(t))),
                        0.01,
                        (np.log(1e-3), np.log(10.0)),
                    )
                )
            )
        for lam in np.geomspace(1e-3, lam_hi, grid_size):
            try:
                stats = trunc_stats(params, float(lam), cfg)
                res, _, _ = tci_rate(params, float(lam), stats, spec)
            except (InsufficientBottleneck, InsufficientAcceptance):
                # deep truncation starves either the link budget or the
                # rejection sampler; such thresholds cannot win the scan
                continue
            candidates.append((float(lam), res))
    if not candidates:
        raise InsufficientBottleneck("no feasible truncation threshold")
    lam_best, best = max(candidates, key=lambda t: t[1].value)
    if candidates[0][0] == 0.0 and lam_best != 0.0:
        # the rate is flat near zero threshold; a sampled candidate only
        # displaces the exact zero-threshold value if it clears its own
        # noise band
        exact = candidates[0][1]
        margin = 3.0 * best.aux.get("std_error", 0.0)
        if best.value <= exact.value + margin:
            lam_best, best = candidates[0]
    scanned = {f"{lam:.6g}": r.value for lam, r in candidates}
    return BoundResult(
        value=max(best.value, 0.0),
        water_level=None,
        aux=dict(best.aux, lambda_th=lam_best, scanned=scanned),
        residual=best.residual,
        method=best.method,
    )


def mmse_bound(params: SystemParams, spec: QuadratureSpec | None = None) -> BoundResult:
    """Achievable rate when the relay forwards a compressed linear MMSE
    estimate of the input; valid for any K, M.

    With mu = E[lambda/(lambda+sigma2)], the distortion D = (T/K) mu /
    (2^(c/K) - 1) fills a budget of c bits exactly. The rate expression can
    peak at a finite budget (at low SNR the entropy bound on the estimation
    noise degrades as D shrinks), and using less of the link is always
    allowed, so the returned bound is the expression's supremum over
    budgets c <= C; aux records the budget actually used.
    """
    if params.C == 0.0:
        return BoundResult(value=0.0, aux={"D": np.inf, "mu": None}, method="quadrature")
    dens = EigDensity(params.T, params.S, spec=spec)
    s2 = params.sigma2
    K, T = params.K, params.T
    mu = dens.expect(lambda lam: lam / (lam + s2))

    def expression(c: float) -> tuple[float, float]:
        D = (T / K) * mu / (2.0 ** (c / K) - 1.0)
        term1 = T * dens.expect(lambda lam: np.log2(lam / (lam + s2) + D))
        term2 = (K - T) * np.log2(D)
        g = (T / K) * mu - (T / K) ** 2 * mu * mu + D
        return float(term1 + term2 - K * np.log2(g)), D

    c_used = params.C
    value, D = expression(params.C)
    if expression(0.98 * params.C)[0] > value:
        # decreasing at the endpoint: the peak sits at an interior budget
        u, v = maximize_scalar(
            lambda t: expression(float(np.exp(t)))[0],
            (np.log(params.C) - 14.0, np.log(params.C)),
            coarse_points=48,
            refine_tol=1e-6,
        )
        if v > value:
            c_used = float(np.exp(u))
            value, D = expression(c_used)
    residual = abs(K * np.log2(1.0 + (T / K) * mu / D) - c_used)
    aux = {"D": float(D), "mu": float(mu), "c_used": float(c_used)}
    if value < 0.0:
        aux["raw_value"] = value
        value = 0.0
    return BoundResult(
        value=value,
        water_level=None,
        aux=aux,
        residual=float(residual),
        method="quadrature",
    )


def asymptote(
    params: SystemParams,
    scheme: str,
    which_limit: str,
    *,
    lambda_th: float | None = None,
    stats: TruncStats | None = None,
    spec: QuadratureSpec | None = None,
) -> float:
    """Closed-form or single-quadrature limit of a scheme's bound.

    which_limit is one of "M" (antennas to infinity), "rho" (noise to
    zero), "C" (link capacity to infinity). Unavailable combinations raise
    UnsupportedLimit.
    """
    if which_limit not in ("M", "rho", "C"):
        raise DomainError(f"unknown limit {which_limit!r}")
    s2 = params.sigma2
    K = params.K

    if scheme == "ub":
        if which_limit in ("M", "rho"):
            return float(params.C)
        return capacity(params, spec)

    if scheme == "ndt":
        if which_limit == "C":
            return capacity(params, spec)
        raise UnsupportedLimit("quantize-and-forward has no closed limit in M or rho")

    if scheme == "qci":
        if which_limit != "C":
            raise UnsupportedLimit(
                "the quantile-grid construction pins the grid; only the C limit is computed"
            )
        if K > params.M:
            raise DomainError("quantized inversion requires K <= M")
        n = params.M - K + 1
        # E[log2(1 + 1/a)] with 1/a = w/sigma2, w ~ Gamma(n, 1)
        from .numerics import integrate_decaying
        from scipy.special import gammaln as _gl

        def integrand(w):
            w = np.asarray(w, dtype=float)
            with np.errstate(divide="ignore", invalid="ignore"):
                logp = (n - 1) * np.log(w) - w - _gl(n)
                if np.ndim(logp):
                    logp[w == 0.0] = -np.inf if n > 1 else -_gl(n)
            return np.log2(1.0 + w / s2) * np.exp(logp)

        val = integrate_decaying(integrand, 0.0, spec, upper_hint=n + 16 * np.sqrt(n) + 60)
        return float(K * val)

    if scheme == "tci":
        if which_limit == "M":
            return float(params.C)
        if which_limit == "rho":
            if stats is not None:
                return float(params.C - stats.h_th)
            if lambda_th is None:
                raise UnsupportedLimit("the rho limit C - H_th needs lambda_th or stats")
            p = trunc_prob(params, lambda_th)
            return float(params.C - binary_entropy(p))
        # C limit: the distortion vanishes
        if stats is not None and stats.method == "monte_carlo":
            acc = stats.accepted
            return float(
                stats.p_th * K * (
                    np.mean(np.log2(1.0 + s2 / acc))
                    - np.log2(s2 * stats.e_inv_lambda)
                )
            )
        if params.K >= params.M:
            raise UnsupportedLimit("the C limit at zero threshold needs K < M (or stats)")
        dens = EigDensity(params.T, params.S, spec=spec)
        e_inv = 1.0 / (params.M - K)
        return float(
            K * (dens.expect(lambda lam: np.log2(1.0 + s2 / lam)) - np.log2(s2 * e_inv))
        )

    if scheme == "mmse":
        if which_limit == "M":
            return float(params.C)
        if which_limit == "rho":
            if K > params.M:
                raise UnsupportedLimit("the MMSE rho limit needs K <= M")
            return float(params.C)
        if K > params.M:
            raise UnsupportedLimit("the MMSE C limit needs K <= M")
        dens = EigDensity(params.T, params.S, spec=spec)
        mu = dens.expect(lambda lam: lam / (lam + s2))
        return float(
            K * dens.expect(lambda lam: np.log2(lam / (lam + s2)))
            - K * np.log2(mu - mu * mu)
        )

    raise DomainError(f"unknown scheme {scheme!r}")
