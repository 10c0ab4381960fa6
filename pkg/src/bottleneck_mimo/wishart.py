"""Distributional machinery for the i.i.d. complex Gaussian channel matrix.

Covers the unordered positive-eigenvalue density of the channel Gram matrix,
the inverse-law of the zero-forcing noise levels, quantizer grids over those
levels, truncation statistics of the smallest eigenvalue, and exact channel
sampling for the Monte Carlo oracles.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import DivergentStatistic, DomainError
from .numerics import (
    QuadratureSpec,
    DEFAULT_QUADRATURE,
    integrate_decaying,
    integrate_finite,
    log_upper_incomplete_gamma,
    solve_monotone,
    upper_incomplete_gamma_regularized,
)

__all__ = [
    "EigDensity",
    "QuantGrid",
    "TruncStats",
    "eig_pdf",
    "eig_expect",
    "noise_pdf",
    "noise_cdf",
    "noise_quantile_grid",
    "noise_grid_pmf",
    "ceil_to_grid",
    "trunc_prob",
    "trunc_stats",
    "sample_channel",
    "sample_eigenvalues",
]


@dataclass(frozen=True)
class EigDensity:
    """Density of one unordered positive eigenvalue of the channel Gram matrix.

    T and S are the smaller and larger of the two channel dimensions. The
    density is a squared-Laguerre series times lambda^(S-T) e^-lambda; its
    mean is S and it integrates to one.
    """

    T: int
    S: int
    spec: Optional[QuadratureSpec] = None

    def __post_init__(self):
        if self.T < 1 or self.S < self.T:
            raise DomainError(f"need 1 <= T <= S, got T={self.T}, S={self.S}")

    @property
    def _log_coeffs(self) -> np.ndarray:
        """Log factorial ratios i!/(i+alpha)! of the series, cached."""
        cached = getattr(self, "_log_coeffs_cache", None)
        if cached is None:
            i = np.arange(self.T)
            cached = gammaln(i + 1) - gammaln(i + self.S - self.T + 1)
            object.__setattr__(self, "_log_coeffs_cache", cached)
        return cached

    def pdf(self, lam):
        """Evaluate the density at lam (scalar or array), vectorized."""
        lam = np.asarray(lam, dtype=float)
        scalar = lam.ndim == 0
        x_arr = np.atleast_1d(lam)
        alpha = self.S - self.T
        with np.errstate(divide="ignore", invalid="ignore"):
            if alpha == 0:
                logw = -x_arr
            else:
                logw = alpha * np.log(x_arr) - x_arr
                logw[x_arr == 0.0] = -np.inf
        logc = self._log_coeffs
        acc = np.zeros_like(x_arr)
        prev = np.ones_like(x_arr)
        cur = 1.0 + alpha - x_arr  # Laguerre recurrence carried across orders
        for i in range(self.T):
            L = prev if i == 0 else cur
            acc += np.exp(logc[i] + logw) * L * L
            if i >= 1:
                prev, cur = cur, ((2 * i + 1 + alpha - x_arr) * cur - (i + alpha) * prev) / (i + 1)
        acc /= self.T
        acc[x_arr < 0.0] = 0.0
        return float(acc[0]) if scalar else acc

    def _mass_hint(self) -> float:
        return self.S + 16.0 * np.sqrt(self.S) + 100.0

    def _breakpoints(self) -> list[float]:
        s = float(self.S)
        return [max(s - 2.0 * np.sqrt(s), 1e-6), s, s + 2.0 * np.sqrt(s)]

    def expect(self, g: Callable, lower: float = 0.0) -> float:
        """Integral of g(lambda) against the density over [lower, inf)."""
        spec = self.spec or DEFAULT_QUADRATURE
        return integrate_decaying(
            lambda lam: g(lam) * self.pdf(lam),
            lower,
            spec,
            upper_hint=self._mass_hint(),
            breakpoints=self._breakpoints(),
        )

    def cdf_interpolator(self, upper: float | None = None, n: int = 20001):
        """Return a vectorized CDF built by cumulative Simpson on a fine grid.

        Accurate to far better than the Kolmogorov-Smirnov resolution at the
        sample sizes used here.
        """
        from scipy.integrate import cumulative_simpson

        hi = upper if upper is not None else self._mass_hint()
        xs = np.linspace(0.0, hi, n)
        cdf = np.concatenate([[0.0], cumulative_simpson(self.pdf(xs), x=xs)])
        cdf = np.clip(cdf / max(cdf[-1], 1.0), 0.0, 1.0)

        def F(q):
            return np.interp(np.asarray(q, dtype=float), xs, cdf, left=0.0, right=1.0)

        return F


def eig_pdf(density: EigDensity, lam) -> float:
    """Density of one unordered positive eigenvalue at lam."""
    return density.pdf(lam)


def eig_expect(
    density: EigDensity, g: Callable, lower: float = 0.0
) -> float:
    """E[g(lambda) ; lambda >= lower] under the eigenvalue density."""
    return density.expect(g, lower)


@dataclass(frozen=True)
class QuantGrid:
    """A finite grid of noise-power levels with its probability masses.

    points end with the +inf sentinel so the ceiling operation is total;
    pmf sums to one; entropy_H0 is the per-entry entropy in bits.
    """

    points: tuple
    pmf: tuple
    entropy_H0: float
    bits_B: Optional[int] = None

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if len(pts) < 1 or not np.isinf(pts[-1]):
            raise DomainError("grid must end with the +inf sentinel")
        finite = pts[:-1]
        if any(not np.isfinite(p) or p <= 0 for p in finite):
            raise DomainError("finite grid levels must be positive")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise DomainError("grid levels must be strictly increasing (no duplicates)")
        pm = np.asarray(self.pmf, dtype=float)
        if pm.shape != (len(pts),):
            raise DomainError("pmf length must match the number of grid levels")
        if (pm < -1e-12).any():
            raise DomainError("pmf entries must be non-negative")
        if abs(pm.sum() - 1.0) > 1e-10:
            raise DomainError(f"pmf sums to {pm.sum()!r}, not 1")

    @property
    def J(self) -> int:
        return len(self.points)

    @property
    def finite_points(self) -> tuple:
        return tuple(self.points[:-1])


def _require_zf(params) -> int:
    """Zero-forcing needs at least as many antennas as inputs; returns
    the inverse-law shape n = M - K + 1."""
    if params.K > params.M:
        raise DomainError(
            f"channel inversion requires K <= M, got K={params.K} > M={params.M}"
        )
    return params.M - params.K + 1


def noise_pdf(params, a) -> float:
    """Density of one diagonal noise level a of the zero-forcing estimate.

    a = sigma2 * eta where 1/eta is the sum of n = M-K+1 unit-mean
    exponential variables (complex-channel convention), i.e. an
    inverse-gamma law with shape n and scale sigma2. For K = M the mean
    diverges; the density itself is still proper.
    """
    n = _require_zf(params)
    s2 = params.sigma2
    a_arr = np.atleast_1d(np.asarray(a, dtype=float))
    out = np.zeros_like(a_arr)
    pos = a_arr > 0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(
            n * np.log(s2) - gammaln(n) - (n + 1) * np.log(a_arr[pos]) - s2 / a_arr[pos]
        )
    if np.ndim(a) == 0:
        if a <= 0:
            raise DomainError(f"noise level must be positive, got {a}")
        return float(out[0])
    return out


def noise_cdf(params, a: float) -> float:
    """Pr{noise level <= a}; the regularized upper incomplete gamma of the
    reciprocal variable."""
    n = _require_zf(params)
    if a <= 0:
        return 0.0
    if np.isinf(a):
        return 1.0
    return upper_incomplete_gamma_regularized(n, params.sigma2 / a)


def _gamma_weight_integral(n: int, u_lo: float, u_hi: float, spec: QuadratureSpec) -> float:
    """Integral of the Gamma(n, 1) pdf over [u_lo, u_hi] by quadrature."""

    def gpdf(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            logp = (n - 1) * np.log(u) - u - gammaln(n)
            if np.ndim(logp):
                logp[u == 0.0] = -np.inf if n > 1 else -gammaln(n)
        return np.exp(logp)

    hint = n + 16.0 * np.sqrt(n) + 60.0
    if np.isinf(u_hi):
        return integrate_decaying(gpdf, u_lo, spec, upper_hint=hint)
    if u_hi <= u_lo:
        return 0.0
    pts = [p for p in (n - 2 * np.sqrt(n), float(n), n + 2 * np.sqrt(n)) if u_lo < p < u_hi]
    return integrate_finite(gpdf, u_lo, u_hi, spec, breakpoints=pts or None)


def noise_quantile_grid(params, B: int, spec: QuadratureSpec | None = None) -> QuantGrid:
    """Quantile grid with J = 2^B levels and the uniform pmf.

    Level j < J is the (j/J)-quantile of the noise-level law, found by
    root-finding the CDF; the last level is the +inf sentinel. The per-entry
    entropy is exactly B bits.
    """
    n = _require_zf(params)
    if int(B) != B or B < 1:
        raise DomainError(f"B must be a positive integer, got {B}")
    J = 2 ** int(B)
    s2 = params.sigma2
    t0 = np.log(s2 / n)  # near the bulk of the law
    pts = []
    for j in range(1, J):
        b = solve_monotone(
            lambda t: noise_cdf(params, np.exp(t)), j / J, (t0 - 2.0, t0 + 2.0)
        )
        pts.append(float(np.exp(b)))
    pts.append(np.inf)
    pmf = np.full(J, 1.0 / J)
    H0 = float(-np.sum(pmf * np.log2(pmf)))
    return QuantGrid(points=tuple(pts), pmf=tuple(pmf), entropy_H0=H0, bits_B=int(B))


def noise_grid_pmf(params, points: Sequence[float], spec: QuadratureSpec | None = None) -> QuantGrid:
    """Score an arbitrary sorted grid: pmf by quadrature of the noise-level
    density over consecutive intervals (first interval starts at 0)."""
    n = _require_zf(params)
    spec = spec or DEFAULT_QUADRATURE
    pts = tuple(float(p) for p in points)
    if len(pts) < 1 or not np.isinf(pts[-1]):
        raise DomainError("grid must end with the +inf sentinel")
    s2 = params.sigma2
    pmf = []
    prev = 0.0  # conceptual b_0 = 0
    for b in pts:
        # substitute u = sigma2/a: the cell becomes a Gamma(n,1) integral
        u_lo = 0.0 if np.isinf(b) else s2 / b
        u_hi = np.inf if prev == 0.0 else s2 / prev
        pmf.append(_gamma_weight_integral(n, u_lo, u_hi, spec))
        prev = b
    pm = np.asarray(pmf)
    H0 = float(-np.sum(np.where(pm > 0, pm * np.log2(np.maximum(pm, 1e-300)), 0.0)))
    return QuantGrid(points=pts, pmf=tuple(pm), entropy_H0=H0)


def ceil_to_grid(a: float, grid: QuantGrid) -> float:
    """Smallest grid level >= a (ties map to the equal level)."""
    if a <= 0:
        raise DomainError(f"noise level must be positive, got {a}")
    idx = int(np.searchsorted(np.asarray(grid.points), a, side="left"))
    return float(grid.points[idx])


def _trunc_prob_determinant(K: int, M: int, lambda_th: float) -> float:
    """Pr{lambda_min >= lambda_th} via the determinant of upper incomplete
    gamma entries, computed in a symmetrically scaled log form."""
    logpsi = np.empty((K, K))
    for i in range(1, K + 1):
        for j in range(i, K + 1):
            v = log_upper_incomplete_gamma(M - K + i + j - 1, lambda_th)
            logpsi[i - 1, j - 1] = v
            logpsi[j - 1, i - 1] = v
    s = 0.5 * np.diag(logpsi)
    A = np.exp(logpsi - s[:, None] - s[None, :])
    cond = np.linalg.cond(A)
    if cond > 6.7e7:
        warnings.warn(
            f"truncation-probability determinant is ill conditioned "
            f"(cond ~ {cond:.2e}); more than half of the working precision is lost",
            RuntimeWarning,
        )
    sign, logdet = np.linalg.slogdet(A)
    if sign <= 0:
        return 0.0
    k = np.arange(1, K + 1)
    lognorm = np.sum(gammaln(M - k + 1)) + np.sum(gammaln(K - k + 1))
    return float(np.exp(np.sum(2.0 * s) + logdet - lognorm))


def trunc_prob(params, lambda_th: float, method: str = "auto") -> float:
    """Probability that the smallest Gram eigenvalue clears the threshold.

    The general value is a K x K determinant of upper incomplete gamma
    entries; for K = M it collapses to exp(-lambda_th * K), which is used
    directly (the determinant route stays available for cross-checks).
    """
    _require_zf(params)
    if lambda_th < 0:
        raise DomainError(f"lambda_th must be >= 0, got {lambda_th}")
    if method not in ("auto", "determinant", "closed_form"):
        raise DomainError(f"unknown method {method!r}")
    if method == "closed_form" or (method == "auto" and params.K == params.M):
        if params.K != params.M:
            raise DomainError("closed form requires K = M")
        return float(np.exp(-lambda_th * params.K))
    return _trunc_prob_determinant(params.K, params.M, lambda_th)


@dataclass(frozen=True)
class TruncStats:
    """Statistics of the eigenvalues conditioned on lambda_min >= lambda_th.

    e_inv_lambda and e_lambda are the conditional means of 1/lambda and
    lambda under the unordered single-eigenvalue law; std_errors carries
    Monte Carlo standard errors when method == "monte_carlo". The accepted
    eigenvalue sample and per-batch bookkeeping are retained so dependent
    quantities can be evaluated on the same draw.
    """

    lambda_th: float
    p_th: float
    h_th: float
    e_inv_lambda: float
    e_lambda: float
    method: str
    std_errors: Optional[dict] = None
    accepted: Optional[np.ndarray] = field(default=None, repr=False)
    batch_raw: Optional[np.ndarray] = field(default=None, repr=False)
    batch_accepted: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not 0.0 <= self.p_th <= 1.0:
            raise DomainError(f"p_th outside [0,1]: {self.p_th}")
        if not self.e_inv_lambda > 0:
            raise DomainError("e_inv_lambda must be positive")
        if self.e_lambda < self.lambda_th:
            raise DomainError("e_lambda cannot fall below the truncation threshold")
        if self.e_inv_lambda * self.e_lambda < 1.0 - 1e-12:
            raise DomainError("conditional means violate E[1/x] E[x] >= 1")


def trunc_stats(params, lambda_th: float, mc=None, g_list=None):
    """Truncation statistics, Monte Carlo by default.

    For lambda_th = 0 with K < M the exact values (p_th = 1, h_th = 0,
    E[1/lambda] = 1/(M-K), E[lambda] = M) are returned in closed form and
    any extra g expectations are computed by quadrature. The K = M,
    lambda_th = 0 case is rejected: E[1/lambda] diverges there.

    Returns TruncStats, or (TruncStats, [E[g(lambda) | accepted], ...])
    when g_list is given.
    """
    _require_zf(params)
    if lambda_th < 0:
        raise DomainError(f"lambda_th must be >= 0, got {lambda_th}")
    if params.K == params.M and lambda_th == 0.0:
        raise DivergentStatistic(
            "E[1/lambda] does not exist for a square channel without truncation"
        )
    if lambda_th == 0.0:
        stats = TruncStats(
            lambda_th=0.0,
            p_th=1.0,
            h_th=0.0,
            e_inv_lambda=1.0 / (params.M - params.K),
            e_lambda=float(params.M),
            method="closed_form",
        )
        if g_list is None:
            return stats
        dens = EigDensity(params.T, params.S)
        return stats, [dens.expect(g) for g in g_list]

    from .montecarlo import McConfig, mc_trunc_stats

    cfg = mc if mc is not None else McConfig()
    return mc_trunc_stats(params, lambda_th, cfg, g_list=g_list)


def sample_channel(rng_seed, params, return_matrix: bool = False):
    """Draw one channel matrix and return the T positive Gram eigenvalues.

    rng_seed may be an integer seed or a numpy Generator. Deterministic per
    seed. With return_matrix=True the raw M x K matrix is returned too.
    """
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    eigs, H = _draw_eigs(rng, params.K, params.M, 1, keep_matrix=True)
    return (eigs[0], H[0]) if return_matrix else eigs[0]


def sample_eigenvalues(rng, params, n: int) -> np.ndarray:
    """Draw n independent eigenvalue vectors, shape (n, T)."""
    eigs, _ = _draw_eigs(rng, params.K, params.M, n, keep_matrix=False)
    return eigs


def _draw_eigs(rng, K: int, M: int, n: int, keep_matrix: bool):
    H = (rng.standard_normal((n, M, K)) + 1j * rng.standard_normal((n, M, K))) / np.sqrt(2.0)
    if K <= M:
        G = np.einsum("nmk,nml->nkl", H.conj(), H)
    else:
        G = np.einsum("nmk,nlk->nml", H, H.conj())
    eigs = np.linalg.eigvalsh(G)
    return eigs, (H if keep_matrix else None)
