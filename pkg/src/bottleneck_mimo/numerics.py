"""Shared numerical substrate.

Semi-infinite quadrature for integrands with an exponential tail, monotone
root finding with automatic bracket expansion, coarse-grid-plus-golden-section
scalar maximization, and the special functions (log-gamma, integer-shape upper
incomplete gamma, associated Laguerre polynomials) that the spectral densities
in this package are built from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import BracketFailure, DomainError, NonConvergence

__all__ = [
    "QuadratureSpec",
    "integrate_decaying",
    "integrate_finite",
    "solve_monotone",
    "maximize_scalar",
    "log_gamma",
    "upper_incomplete_gamma",
    "upper_incomplete_gamma_regularized",
    "log_upper_incomplete_gamma",
    "laguerre_assoc",
]

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and the subdivision cap used by every integral here."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


def _eval_grid(f: Callable[[float], float], xs: np.ndarray) -> np.ndarray:
    """Evaluate f on a grid, whether or not f accepts arrays."""
    try:
        out = np.asarray(f(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except Exception:
        pass
    return np.array([float(f(x)) for x in xs])


def _vectorized(f: Callable) -> Callable:
    """Wrap f so the adaptive integrator can hand it node arrays."""

    def fv(x):
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0:
            return float(f(float(arr)))
        try:
            out = np.asarray(f(arr), dtype=float)
            if out.shape == arr.shape:
                return out
        except Exception:
            pass
        return np.array([float(f(t)) for t in arr])

    return fv


_GL7_X, _GL7_W = np.polynomial.legendre.leggauss(7)
_GL15_X, _GL15_W = np.polynomial.legendre.leggauss(15)


def _panel(fv, a: float, b: float) -> tuple[float, float]:
    """15-point Gauss value of one panel and its 7-point error estimate,
    from a single array evaluation."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    xs = np.concatenate([mid + half * _GL15_X, mid + half * _GL7_X])
    ys = fv(xs)
    i15 = half * float(np.dot(_GL15_W, ys[:15]))
    i7 = half * float(np.dot(_GL7_W, ys[15:]))
    return i15, abs(i15 - i7)


def integrate_finite(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    breakpoints: Iterable[float] | None = None,
) -> float:
    """Adaptive Gauss quadrature of f over [a, b].

    Panels are bisected worst-error-first until the summed error estimate
    meets the tolerances or the subdivision cap is hit (NonConvergence).
    The integrand is evaluated on node arrays, one call per panel.
    """
    import heapq

    spec = spec or DEFAULT_QUADRATURE
    if not b > a:
        return 0.0
    fv = _vectorized(f)
    edges = [a]
    if breakpoints is not None:
        edges.extend(p for p in sorted(set(breakpoints)) if a < p < b)
    edges.append(b)
    # a few uniform splits guard against features the seeds don't mark
    seeds = []
    for lo, hi in zip(edges, edges[1:]):
        n_sub = min(4, max(1, int((hi - lo) / max(b - a, 1e-300) * 8)))
        cuts = np.linspace(lo, hi, n_sub + 1)
        seeds.extend(zip(cuts[:-1], cuts[1:]))
    heap = []
    total, err_total = 0.0, 0.0
    counter = 0
    for lo, hi in seeds:
        val, err = _panel(fv, lo, hi)
        heapq.heappush(heap, (-err, counter, lo, hi, val))
        counter += 1
        total += val
        err_total += err
    while len(heap) < spec.max_subdivisions:
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if err_total <= tol:
            break
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        err_total += neg_err  # neg_err = -err
        total -= val
        mid = 0.5 * (lo + hi)
        for seg in ((lo, mid), (mid, hi)):
            v, e = _panel(fv, *seg)
            heapq.heappush(heap, (-e, counter, seg[0], seg[1], v))
            counter += 1
            total += v
            err_total += e
    if err_total > 5.0 * max(spec.abs_tol, spec.rel_tol * abs(total)):
        raise NonConvergence(
            f"quadrature on [{a:g}, {b:g}] reached error {err_total:.3e} "
            f"(value {total:.6e}) at the subdivision cap"
        )
    return total


def _tail_cutoff(f, lower: float, abs_tol: float) -> float:
    """Pick L so that the exponentially decaying tail beyond L is negligible.

    A probe grid finds where |f| last exceeds the tail threshold; L is then
    pushed further out until |f(L)| is safely below it.
    """
    span_hi = lower + 400.0
    # interior probe points: endpoints can carry integrable 0*inf artifacts
    probe = lower + (span_hi - lower) * np.arange(1, 769) / 768.0
    vals = np.nan_to_num(np.abs(_eval_grid(f, probe)), nan=0.0, posinf=0.0)
    fmax = vals.max()
    if fmax == 0.0 or not np.isfinite(fmax):
        return span_hi
    thresh = max(abs_tol * 1e-3, fmax * 1e-16)
    above = np.nonzero(vals > thresh)[0]
    L = span_hi if above.size == 0 else probe[above[-1]] + 0.05 * (span_hi - lower)
    L = max(L, lower + 20.0)
    # extend until the integrand (assumed ~ e^{-lambda} beyond the mass) is tiny
    for _ in range(200):
        if abs(float(f(L))) <= thresh:
            break
        L += max(5.0, 0.1 * (L - lower))
    return L


def integrate_decaying(
    f: Callable[[float], float],
    lower: float,
    spec: QuadratureSpec | None = None,
    *,
    upper_hint: float | None = None,
    breakpoints: Iterable[float] | None = None,
) -> float:
    """Integrate f over [lower, inf) for integrands with an e^{-x} tail.

    Parameters
    ----------
    f : callable
        Integrand; must decay at least exponentially for large arguments.
    lower : float
        Lower limit, >= 0 for the densities used here (any finite value works).
    spec : QuadratureSpec, optional
        Tolerances; the module default is used when omitted.
    upper_hint : float, optional
        Location scale of the integrand's mass. Callers integrating against
        an eigenvalue density centered near S must pass a hint, otherwise
        the probe grid may truncate before reaching the mass.
    breakpoints : iterable of float, optional
        Interior points handed to the adaptive subdivision (e.g. the center
        and shoulders of a narrow bump).

    Returns
    -------
    float
        The integral, within spec tolerances (tail residual included via an
        analytic geometric estimate).

    Raises
    ------
    NonConvergence
        If adaptive subdivision exhausts its cap without reaching tolerance.
    """
    spec = spec or DEFAULT_QUADRATURE
    if upper_hint is not None:
        # the caller vouches that the integrand is negligible beyond the
        # hint, so the probe scan is skipped; the growth loop below still
        # catches an underestimate
        L = max(float(upper_hint), lower + 40.0)
        for _ in range(200):
            if abs(float(f(L))) <= spec.abs_tol * 1e-3:
                break
            L += max(5.0, 0.1 * (L - lower))
    else:
        L = _tail_cutoff(f, lower, spec.abs_tol)
    value = integrate_finite(f, lower, L, spec, breakpoints)
    # geometric tail estimate beyond L for the ~ e^{-x} decay
    fL = float(f(L))
    fL1 = float(f(L + 1.0))
    if fL > 0.0 and 0.0 < fL1 < fL:
        value += fL / max(-np.log(fL1 / fL), 0.5)
    return value


def solve_monotone(
    g: Callable[[float], float],
    target: float,
    bracket_hint: tuple[float, float],
    *,
    residual_tol: float = 1e-9,
    max_expansions: int = 60,
) -> float:
    """Solve g(x) = target for strictly monotone continuous g.

    The hint bracket is expanded by doubling (up to `max_expansions` rounds)
    until the target is straddled, then the root is isolated by Brent's
    method and polished by bisection until
    |g(root) - target| <= residual_tol * max(1, |target|).

    Raises
    ------
    BracketFailure
        If expansion never straddles the target.
    """
    lo, hi = float(bracket_hint[0]), float(bracket_hint[1])
    if lo > hi:
        lo, hi = hi, lo
    if lo == hi:
        hi = lo + max(1.0, abs(lo))
    glo, ghi = g(lo) - target, g(hi) - target
    width = hi - lo
    for _ in range(max_expansions):
        if glo == 0.0:
            return lo
        if ghi == 0.0:
            return hi
        if glo * ghi < 0.0:
            break
        width *= 2.0
        increasing = ghi >= glo
        if (increasing and glo > 0.0) or (not increasing and glo < 0.0):
            lo -= width
            glo = g(lo) - target
        else:
            hi += width
            ghi = g(hi) - target
    else:
        raise BracketFailure(
            f"target {target:g} not straddled after {max_expansions} bracket expansions"
        )

    from scipy.optimize import brentq

    root = brentq(lambda x: g(x) - target, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=300)
    tol = residual_tol * max(1.0, abs(target))
    res = g(root) - target
    if abs(res) <= tol:
        return root
    # polish: bisect the residual sign change around the Brent root
    a, b = lo, hi
    fa = glo
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = g(mid) - target
        if abs(fm) <= tol or (b - a) < 1e-15 * max(1.0, abs(mid)):
            return mid
        if fa * fm <= 0.0:
            b = mid
        else:
            a, fa = mid, fm
    raise NonConvergence(f"residual {res:.3e} above tolerance {tol:.3e} after polishing")


def maximize_scalar(
    f: Callable[[float], float],
    interval: tuple[float, float],
    coarse_points: int = 64,
    refine_tol: float = 1e-8,
) -> tuple[float, float]:
    """Maximize f on [a, b]: coarse grid scan, then golden-section refinement.

    Returns (x_star, f_star) with f_star >= the best coarse-grid value; the
    refinement narrows the bracket around the best grid point to width
    `refine_tol`.
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b})")
    xs = np.linspace(a, b, max(int(coarse_points), 3))
    vals = _eval_grid(f, xs)
    i = int(np.nanargmax(vals))
    x_best, f_best = float(xs[i]), float(vals[i])

    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, len(xs) - 1)]
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = float(f(x1)), float(f(x2))
    while hi - lo > refine_tol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = float(f(x1))
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = float(f(x2))
    for x, v in ((x1, f1), (x2, f2)):
        if v > f_best:
            x_best, f_best = float(x), float(v)
    return x_best, f_best


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if x <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def _check_gamma_args(n: int, x: float) -> None:
    if n != int(n) or n < 1:
        raise DomainError(f"shape parameter must be a positive integer, got {n}")
    if x < 0:
        raise DomainError(f"lower limit must be >= 0, got {x}")


def log_upper_incomplete_gamma(n: int, x: float) -> float:
    """log of Gamma(n, x) = int_x^inf u^{n-1} e^{-u} du for integer n >= 1.

    Uses the finite sum Gamma(n, x) = (n-1)! e^{-x} sum_{m<n} x^m / m!
    evaluated as a log-sum-exp, so it neither overflows for large n nor
    underflows for large x.
    """
    _check_gamma_args(n, x)
    n = int(n)
    if x == 0.0:
        return float(gammaln(n))
    m = np.arange(n)
    terms = m * np.log(x) - gammaln(m + 1)
    return float(gammaln(n) - x + logsumexp(terms))


def upper_incomplete_gamma(n: int, x: float) -> float:
    """Gamma(n, x) for integer n >= 1; equals (n-1)! at x = 0."""
    return float(np.exp(log_upper_incomplete_gamma(n, x)))


def upper_incomplete_gamma_regularized(n: int, x: float) -> float:
    """Gamma(n, x) / Gamma(n), in [0, 1] and decreasing in x."""
    _check_gamma_args(n, x)
    return float(np.exp(log_upper_incomplete_gamma(n, x) - gammaln(int(n))))


def laguerre_assoc(i: int, alpha: int, x):
    """Associated Laguerre polynomial L_i^alpha(x) by the three-term recurrence.

    Parameters
    ----------
    i : int
        Polynomial order, >= 0.
    alpha : int
        Non-negative integer shape offset.
    x : float or ndarray
        Evaluation points.

    The recurrence
        (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    is numerically stable; expanded monomial coefficients are never formed.
    """
    if i < 0 or alpha < 0:
        raise DomainError("laguerre_assoc requires i >= 0 and alpha >= 0")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if i == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(1, i):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if cur.ndim else float(cur)
