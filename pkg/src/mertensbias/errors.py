"""Exception types shared across the package."""


class MertensBiasError(Exception):
    """Base class for domain errors raised by this package."""


class LimitExceededError(MertensBiasError, ValueError):
    """An argument exceeds the configured sieve or table capacity."""


class ZeroTableError(MertensBiasError, ValueError):
    """A zero-ordinate file failed parsing or validation."""


class QuadratureError(MertensBiasError, RuntimeError):
    """A quadrature did not meet its convergence criterion."""
