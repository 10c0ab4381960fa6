"""Bounds on the information-bottleneck rate of a Rayleigh-fading MIMO
channel observed through a capacity-limited relay link, with Monte Carlo
oracles validating every analytic quantity."""

from .errors import (
    BottleneckMimoError,
    BracketFailure,
    CellExplosion,
    DivergentStatistic,
    DomainError,
    InfeasibleDistortion,
    InsufficientAcceptance,
    InsufficientBottleneck,
    NonConvergence,
    UnsupportedLimit,
)
from .model import (
    BoundResult,
    SCHEMES,
    SweepSpec,
    SystemParams,
    binary_entropy,
    capacity,
    scalar_ib_rate,
)
from .numerics import (
    QuadratureSpec,
    integrate_decaying,
    laguerre_assoc,
    log_gamma,
    log_upper_incomplete_gamma,
    maximize_scalar,
    solve_monotone,
    upper_incomplete_gamma,
    upper_incomplete_gamma_regularized,
)
from .wishart import (
    EigDensity,
    QuantGrid,
    TruncStats,
    ceil_to_grid,
    eig_expect,
    eig_pdf,
    noise_cdf,
    noise_grid_pmf,
    noise_pdf,
    noise_quantile_grid,
    sample_channel,
    sample_eigenvalues,
    trunc_prob,
    trunc_stats,
)
from .montecarlo import (
    McConfig,
    McEstimate,
    mc_eig_expect,
    mc_joint_entropy,
    mc_sum_entropy,
    mc_trunc_stats,
)
from .bounds import (
    WaterfillSolution,
    asymptote,
    mmse_bound,
    ndt_bound,
    ndt_rate,
    qci_bound_quantile,
    qci_rate,
    tci_bound,
    tci_closed_form_zero_threshold,
    tci_rate,
    upper_bound,
    waterfill_continuous,
)

__version__ = "0.1.0"
