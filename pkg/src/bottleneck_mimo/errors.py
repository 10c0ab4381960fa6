"""Exception types shared across the package."""


class BottleneckMimoError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BottleneckMimoError, ValueError):
    """Inputs outside the mathematical domain of an operation (e.g. K > M
    where zero-forcing requires K <= M)."""


class NonConvergence(BottleneckMimoError, RuntimeError):
    """A quadrature or iterative solve stopped without meeting its tolerance."""


class BracketFailure(NonConvergence):
    """Root bracketing never straddled the target after expansion."""


class InfeasibleDistortion(DomainError):
    """Channel-quantization distortion too small for the available link
    capacity (the budget left for the observation would be negative)."""


class InsufficientBottleneck(DomainError):
    """Link capacity entirely consumed by side information, leaving no
    budget for the observation."""


class DivergentStatistic(DomainError):
    """A requested expectation does not exist (e.g. E[1/lambda] of a square
    channel without truncation)."""


class InsufficientAcceptance(NonConvergence):
    """Rejection sampling kept fewer samples than the configured floor."""


class CellExplosion(DomainError):
    """Joint-entropy estimation refused: the number of quantizer cells is
    too large for the configured sample count."""


class UnsupportedLimit(DomainError):
    """Asymptotic limit not available for the requested scheme/parameters."""
