"""Exact Mertens error terms, zeta-zero explicit formulas, and the bias distribution.

The package evaluates the error terms of Mertens' first two theorems by
prime sieving, checks truncated zeta-zero explicit formulas for them
against the sieve, and computes the limiting distribution of the
normalized error (Bessel-product characteristic function, Gil-Pelaez
inversion, Monte Carlo) together with the positive-bias probability.

Hot numeric kernels are JIT-compiled with numba by default; set
``MERTENSBIAS_BACKEND=numpy`` to force the pure-numpy fallback.
"""

from mertensbias._kernels import BACKEND
from mertensbias.bessel import bessel_j0
from mertensbias.constants import MertensConstants, compute_constants, euler_constant
from mertensbias.distribution import (
    DistributionModel,
    MonteCarloResult,
    build_model,
    density_grid,
    mu_hat,
    prob_positive,
    sample_z,
    theoretical_variance,
)
from mertensbias.explicit import (
    ExplicitEvaluation,
    compare,
    explicit_m2,
    explicit_script_e,
    sine_sum,
)
from mertensbias.mertens import (
    DensityReport,
    MertensSample,
    PositivityReport,
    empirical_log_density,
    error_statistics,
    evaluate,
    residuals,
    scan,
    verify_positivity,
)
from mertensbias.primes import (
    PrimeSumLedger,
    SieveSegment,
    prime_sums,
    sieve_segment,
)
from mertensbias.zeros import ZeroTable, load_zeros, validate, zero_sum_identity

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DensityReport",
    "DistributionModel",
    "ExplicitEvaluation",
    "MertensConstants",
    "MertensSample",
    "MonteCarloResult",
    "PositivityReport",
    "PrimeSumLedger",
    "SieveSegment",
    "ZeroTable",
    "bessel_j0",
    "build_model",
    "compare",
    "compute_constants",
    "density_grid",
    "empirical_log_density",
    "error_statistics",
    "euler_constant",
    "evaluate",
    "explicit_m2",
    "explicit_script_e",
    "load_zeros",
    "mu_hat",
    "prime_sums",
    "prob_positive",
    "residuals",
    "sample_z",
    "scan",
    "sieve_segment",
    "sine_sum",
    "theoretical_variance",
    "validate",
    "verify_positivity",
    "zero_sum_identity",
    "__version__",
]
