"""Simulation oracles.

Every analytic quantity in the package has a Monte Carlo counterpart here,
and the two quantities the quantized-inversion analysis cannot reach in
closed form (the joint entropy of the quantized noise levels and the
truncated conditional eigenvalue statistics) are produced by these engines.

Sampling is batched; each batch draws from its own seed-derived substream and
batches are combined in index order, so results are bit-identical for a given
(seed, config) regardless of how many worker threads ran the batches.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import CellExplosion, DomainError, InsufficientAcceptance
from .model import binary_entropy
from .wishart import QuantGrid, TruncStats, sample_eigenvalues

__all__ = [
    "McConfig",
    "McEstimate",
    "mc_eig_expect",
    "mc_joint_entropy",
    "mc_sum_entropy",
    "mc_trunc_stats",
]


def _thread_count() -> int:
    raw = os.environ.get("BOTTLENECK_MIMO_THREADS", "")
    try:
        return max(int(raw), 0)
    except ValueError:
        return 0


@dataclass(frozen=True)
class McConfig:
    """Sample budget, seed, batching, and the rejection floor."""

    samples: int = 100_000
    seed: int = 0
    batch_size: int = 10_000
    min_accepted: int = 100

    def __post_init__(self):
        if self.samples < 1_000:
            raise DomainError(f"samples must be >= 1000, got {self.samples}")
        if self.batch_size < 1:
            raise DomainError("batch_size must be >= 1")
        if self.batch_size > self.samples:  # small runs just use one batch
            object.__setattr__(self, "batch_size", self.samples)

    def batch_sizes(self) -> list[int]:
        full, rem = divmod(self.samples, self.batch_size)
        return [self.batch_size] * full + ([rem] if rem else [])

    def batch_rngs(self) -> list[np.random.Generator]:
        children = np.random.SeedSequence(self.seed).spawn(len(self.batch_sizes()))
        return [np.random.default_rng(s) for s in children]


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo mean with its standard error."""

    mean: float
    std_error: float
    n_effective: int
    seed: int

    def __post_init__(self):
        if self.std_error < 0:
            raise DomainError("std_error must be >= 0")


def _run_batches(worker: Callable[[int], object], n_batches: int) -> list:
    """Run batch workers, possibly in a thread pool, returning results in
    batch-index order (the merge order never depends on scheduling)."""
    threads = _thread_count()
    if threads > 1 and n_batches > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(worker, range(n_batches)))
    return [worker(b) for b in range(n_batches)]


def _combine_mean_var(parts: Sequence[tuple[int, float, float]]) -> tuple[int, float, float]:
    """Combine (n, mean, M2) moment triples in the given order."""
    n, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in parts:
        if nb == 0:
            continue
        delta = mb - mean
        tot = n + nb
        mean += delta * nb / tot
        m2 += m2b + delta * delta * n * nb / tot
        n = tot
    return n, mean, m2


def mc_eig_expect(params, g: Callable, cfg: McConfig) -> McEstimate:
    """Average of g over sampled unordered Gram eigenvalues.

    One channel draw contributes the mean of g over its T eigenvalues, so
    the standard error honestly reflects the within-draw correlation.
    """
    sizes = cfg.batch_sizes()
    rngs = cfg.batch_rngs()

    def worker(b: int):
        eigs = sample_eigenvalues(rngs[b], params, sizes[b])
        per_draw = np.mean(g(eigs), axis=1)
        n = per_draw.size
        m = float(per_draw.mean())
        return n, m, float(np.sum((per_draw - m) ** 2))

    n, mean, m2 = _combine_mean_var(_run_batches(worker, len(sizes)))
    se = float(np.sqrt(m2 / (n - 1) / n)) if n > 1 else 0.0
    return McEstimate(mean=float(mean), std_error=se, n_effective=n, seed=cfg.seed)


def _noise_diag_batches(params, cfg: McConfig):
    """Per-batch diagonal noise levels of the zero-forced estimate,
    shape (batch, K)."""
    if params.K > params.M:
        raise DomainError("noise levels need K <= M")
    sizes = cfg.batch_sizes()
    rngs = cfg.batch_rngs()

    def worker(b: int):
        rng = rngs[b]
        n, K, M = sizes[b], params.K, params.M
        H = (rng.standard_normal((n, M, K)) + 1j * rng.standard_normal((n, M, K))) / np.sqrt(2.0)
        G = np.einsum("nmk,nml->nkl", H.conj(), H)
        diag = np.diagonal(np.linalg.inv(G), axis1=1, axis2=2).real
        return params.sigma2 * diag

    return _run_batches(worker, len(sizes))


def _plugin_entropy(counts: np.ndarray, n: int, miller_madow: bool) -> tuple[float, float]:
    """Plug-in entropy of a count vector in bits, with a delta-method
    standard error; optional Miller-Madow bias correction."""
    p = counts[counts > 0] / n
    logp = np.log2(p)
    h = float(-np.sum(p * logp))
    if miller_madow:
        h += (p.size - 1) / (2.0 * n * np.log(2.0))
    var = float(np.sum(p * logp * logp) - (np.sum(p * logp)) ** 2)
    return h, float(np.sqrt(max(var, 0.0) / n))


def mc_joint_entropy(
    params, grid: QuantGrid, cfg: McConfig, miller_madow: bool = False
) -> McEstimate:
    """Plug-in entropy of the joint law of the K quantized noise levels.

    The empirical pmf lives on J^K cells, so the sample budget must cover
    them: the run is refused unless samples >= 50 * J^K.
    """
    J, K = grid.J, params.K
    cells = J ** K
    if cfg.samples < 50 * cells:
        raise CellExplosion(
            f"J^K = {cells} cells need at least {50 * cells} samples, "
            f"got {cfg.samples}"
        )
    edges = np.asarray(grid.points[:-1])
    counts = np.zeros(cells, dtype=np.int64)
    for diag in _noise_diag_batches(params, cfg):
        idx = np.searchsorted(edges, diag, side="left")  # ceiling quantizer
        flat = np.zeros(diag.shape[0], dtype=np.int64)
        for k in range(K):
            flat = flat * J + idx[:, k]
        counts += np.bincount(flat, minlength=cells)
    h, se = _plugin_entropy(counts, cfg.samples, miller_madow)
    return McEstimate(mean=h, std_error=se, n_effective=cfg.samples, seed=cfg.seed)


def mc_sum_entropy(
    params, grid: QuantGrid, cfg: McConfig, miller_madow: bool = False
) -> McEstimate:
    """Sum of the per-entry entropies of the quantized noise levels.

    Converges to K times the analytic per-entry entropy of the grid. Each
    entry's entropy is estimated from its own draws; the error adds the
    per-entry delta-method variances (entries of one draw are correlated,
    which this sum does not discount, so the band is mildly conservative).
    """
    J, K = grid.J, params.K
    edges = np.asarray(grid.points[:-1])
    counts = np.zeros((K, J), dtype=np.int64)
    for diag in _noise_diag_batches(params, cfg):
        idx = np.searchsorted(edges, diag, side="left")
        for k in range(K):
            counts[k] += np.bincount(idx[:, k], minlength=J)
    h_tot, var_tot = 0.0, 0.0
    for k in range(K):
        h, se = _plugin_entropy(counts[k], cfg.samples, miller_madow)
        h_tot += h
        var_tot += se * se
    return McEstimate(
        mean=h_tot, std_error=float(np.sqrt(var_tot)), n_effective=cfg.samples, seed=cfg.seed
    )


def mc_trunc_stats(params, lambda_th: float, cfg: McConfig, g_list=None):
    """Rejection-sampled truncation statistics.

    Samples Gram eigenvalues, keeps draws whose smallest eigenvalue clears
    lambda_th, and averages 1/lambda and lambda (and any extra g) over all K
    eigenvalues of the kept draws. Raises InsufficientAcceptance when fewer
    than cfg.min_accepted draws survive.
    """
    if params.K > params.M:
        raise DomainError("truncated inversion needs K <= M")
    sizes = cfg.batch_sizes()
    rngs = cfg.batch_rngs()

    def worker(b: int):
        eigs = sample_eigenvalues(rngs[b], params, sizes[b])
        return eigs[eigs.min(axis=1) >= lambda_th]

    kept = _run_batches(worker, len(sizes))
    return _trunc_stats_from_pool(kept, sizes, lambda_th, cfg, g_list)


def _trunc_stats_from_pool(kept, sizes, lambda_th, cfg, g_list=None):
    """Assemble TruncStats from per-batch accepted eigenvalue arrays."""
    batch_raw = np.asarray(sizes, dtype=np.int64)
    batch_acc = np.asarray([k.shape[0] for k in kept], dtype=np.int64)
    accepted = np.concatenate(kept, axis=0) if len(kept) else np.empty((0, 1))
    n_raw = int(batch_raw.sum())
    n_acc = int(batch_acc.sum())
    if n_acc < cfg.min_accepted:
        raise InsufficientAcceptance(
            f"{n_acc} accepted draws, below the floor {cfg.min_accepted} "
            f"(lambda_th={lambda_th:g})"
        )
    p = n_acc / n_raw
    se_p = float(np.sqrt(p * (1.0 - p) / n_raw))
    inv_rows = np.mean(1.0 / accepted, axis=1)
    lam_rows = np.mean(accepted, axis=1)
    e_inv = float(inv_rows.mean())
    e_lam = float(lam_rows.mean())
    se_inv = float(inv_rows.std(ddof=1) / np.sqrt(n_acc)) if n_acc > 1 else 0.0
    se_lam = float(lam_rows.std(ddof=1) / np.sqrt(n_acc)) if n_acc > 1 else 0.0
    stats = TruncStats(
        lambda_th=float(lambda_th),
        p_th=float(p),
        h_th=binary_entropy(p),
        e_inv_lambda=e_inv,
        e_lambda=e_lam,
        method="monte_carlo",
        std_errors={"p_th": se_p, "e_inv_lambda": se_inv, "e_lambda": se_lam},
        accepted=accepted,
        batch_raw=batch_raw,
        batch_accepted=batch_acc,
    )
    if g_list is None:
        return stats
    extras = []
    for g in g_list:
        rows = np.mean(g(accepted), axis=1)
        m = float(rows.mean())
        se = float(rows.std(ddof=1) / np.sqrt(n_acc)) if n_acc > 1 else 0.0
        extras.append(McEstimate(mean=m, std_error=se, n_effective=n_acc, seed=cfg.seed))
    return stats, extras
