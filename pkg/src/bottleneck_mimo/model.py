"""Core parameter and result types, channel capacity, and the scalar
bottleneck rate every scheme reduces to.

All rates are in bits per complex dimension (log base 2 throughout); SNR is
stored linearly and converted from dB only at the CLI boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .numerics import QuadratureSpec

__all__ = [
    "SystemParams",
    "BoundResult",
    "SweepSpec",
    "SCHEMES",
    "capacity",
    "scalar_ib_rate",
    "binary_entropy",
]

SCHEMES = ("ub", "ndt", "qci", "tci", "mmse", "capacity")


@dataclass(frozen=True)
class SystemParams:
    """Channel and link parameters.

    K : channel-input dimension, M : relay antenna count, sigma2 : noise
    variance per receive antenna, C : relay-destination link capacity in
    bits per complex dimension. sigma2 is the stored quantity; the SNR
    rho = 1/sigma2 is derived so the pair stays consistent.
    """

    K: int
    M: int
    sigma2: float
    C: float

    def __post_init__(self):
        if int(self.K) != self.K or self.K < 1:
            raise DomainError(f"K must be a positive integer, got {self.K}")
        if int(self.M) != self.M or self.M < 1:
            raise DomainError(f"M must be a positive integer, got {self.M}")
        if not self.sigma2 > 0:
            raise DomainError(f"sigma2 must be positive, got {self.sigma2}")
        if self.C < 0:
            raise DomainError(f"C must be non-negative, got {self.C}")

    @property
    def rho(self) -> float:
        return 1.0 / self.sigma2

    @property
    def T(self) -> int:
        return min(self.K, self.M)

    @property
    def S(self) -> int:
        return max(self.K, self.M)

    @classmethod
    def from_snr_db(cls, K: int, M: int, snr_db: float, C: float) -> "SystemParams":
        return cls(K=K, M=M, sigma2=10.0 ** (-snr_db / 10.0), C=C)

    @property
    def rho_db(self) -> float:
        return -10.0 * np.log10(self.sigma2)


@dataclass(frozen=True)
class BoundResult:
    """A computed bound value plus solver diagnostics.

    value : rate in bits/complex dimension (>= 0, <= C up to tolerance)
    water_level : the water level nu when a water-filling solve produced
        the value, else None
    aux : scheme-specific parameters (distortion D, quantizer grid, the
        truncation threshold, Monte Carlo standard errors, ...)
    residual : absolute violation of the solved constraint at the returned
        solution
    method : one of {"quadrature", "monte_carlo", "closed_form"}
    """

    value: float
    water_level: Optional[float] = None
    aux: dict = field(default_factory=dict)
    residual: float = 0.0
    method: str = "quadrature"


@dataclass(frozen=True)
class SweepSpec:
    """A one-axis parameter sweep over schemes.

    axis : one of {"C", "rho_db", "M", "K_equals_M"}
    values : strictly ordered axis values
    fixed : template parameters; the axis value overrides the matching field
    schemes : subset of SCHEMES to evaluate
    options : scheme options (qci_bits, lambda_th, mc samples, seed, ...);
        c_per_k couples C = c_per_k * K on the K_equals_M axis
    """

    axis: str
    values: Sequence[float]
    fixed: SystemParams
    schemes: Sequence[str]
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axis not in ("C", "rho_db", "M", "K_equals_M"):
            raise DomainError(f"unknown sweep axis {self.axis!r}")
        vals = list(self.values)
        if not vals:
            raise DomainError("sweep needs at least one axis value")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise DomainError("sweep values must be strictly increasing")
        bad = [s for s in self.schemes if s not in SCHEMES]
        if bad:
            raise DomainError(f"unknown schemes {bad}")
        for p in self.points():
            pass  # constructing each point validates it

    def points(self):
        """Yield (axis_value, SystemParams) along the sweep."""
        f = self.fixed
        c_per_k = self.options.get("c_per_k")
        for v in self.values:
            if self.axis == "C":
                yield v, SystemParams(f.K, f.M, f.sigma2, float(v))
            elif self.axis == "rho_db":
                yield v, SystemParams(f.K, f.M, 10.0 ** (-v / 10.0), f.C)
            elif self.axis == "M":
                yield v, SystemParams(f.K, int(v), f.sigma2, f.C)
            else:  # K_equals_M
                C = float(c_per_k * v) if c_per_k is not None else f.C
                yield v, SystemParams(int(v), int(v), f.sigma2, C)


def capacity(params: SystemParams, spec: QuadratureSpec | None = None) -> float:
    """Ergodic capacity of the fading channel in bits/complex dimension.

    T * E[log2(1 + rho * lambda)] under the unordered-eigenvalue density;
    depends on (K, M) only through (T, S), hence symmetric in K and M.
    """
    from .wishart import EigDensity

    dens = EigDensity(params.T, params.S, spec=spec)
    rho = params.rho
    return params.T * dens.expect(lambda lam: np.log2(1.0 + rho * lam))


def scalar_ib_rate(snr: float, c: float) -> float:
    """Optimal bottleneck rate of a scalar Gaussian channel with the given
    SNR under a compression budget of c bits:
    log2(1+snr) - log2(1+snr*2^-c).  Bounded by both c and log2(1+snr)."""
    if snr < 0:
        raise DomainError(f"snr must be >= 0, got {snr}")
    if c < 0:
        raise DomainError(f"budget must be >= 0, got {c}")
    return float(np.log2(1.0 + snr) - np.log2(1.0 + snr * 2.0 ** (-c)))


def binary_entropy(p: float) -> float:
    """Binary entropy H2(p) in bits, with 0 log 0 := 0."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"probability outside [0, 1]: {p}")
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))
