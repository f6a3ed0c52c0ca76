"""Euler's constant and the two Mertens constants with certified tail bounds.

E = -C0 - sum_p sum_{k>=2} log p / p^k      (~ -1.3325822757)
B =  C0 - sum_p sum_{k>=2} 1 / (k p^k)      (~  0.2614972128)

The k-sums are closed forms per prime (log p/(p(p-1)) and -log(1-1/p)-1/p),
so only the tail in p is truncated. The reported constants include a
density-model estimate of the p > P tail; the certified bound on what that
estimate can miss uses classical Chebyshev-type bounds on theta(t)
(theta(t) < 1.01624 t for all t > 0 and theta(t) > 0.84 t for t >= 101,
both Rosser-Schoenfeld) together with the exact sieved theta(P).
"""

import math
from dataclasses import dataclass

import numpy as np

from mertensbias.errors import LimitExceededError
from mertensbias.primes import DEFAULT_SIEVE_LIMIT, iter_prime_segments

THETA_UPPER = 1.01624
THETA_LOWER_MIN_X = 101


@dataclass(frozen=True)
class MertensConstants:
    c0: float
    e_const: float
    b_const: float
    prime_limit: int
    tail_bound: float
    # raw truncated prime sums and the tail estimates folded into the constants
    e_prime_sum: float
    b_prime_sum: float
    e_tail_estimate: float
    b_tail_estimate: float


def euler_constant(terms: int = 200) -> float:
    """Euler's constant via Euler-Maclaurin on sum 1/k - log n.

    C0 = H_n - log n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4) + 1/(252 n^6) - ...
    At n = 200 the first omitted correction is ~6e-17.
    """
    n = int(terms)
    if n < 10:
        raise ValueError("need at least 10 terms")
    h = math.fsum(1.0 / k for k in range(1, n + 1))
    n2 = float(n) * n
    return (
        h
        - math.log(n)
        - 1.0 / (2.0 * n)
        + 1.0 / (12.0 * n2)
        - 1.0 / (120.0 * n2 * n2)
        + 1.0 / (252.0 * n2 * n2 * n2)
    )


def _e_term_partials(primes: np.ndarray) -> float:
    # sum_{k>=2} log p / p^k = log p / (p (p - 1))
    p = primes.astype(np.float64)
    return float(np.sum(np.log(p) / (p * (p - 1.0))))


def _b_term_partials(primes: np.ndarray) -> float:
    # sum_{k>=2} 1/(k p^k) = -log(1 - 1/p) - 1/p
    p = primes.astype(np.float64)
    return float(np.sum(-np.log1p(-1.0 / p) - 1.0 / p))


def _b_integrand(t: np.ndarray) -> np.ndarray:
    return (-np.log1p(-1.0 / t) - 1.0 / t) / np.log(t)


def _b_tail_integral(P: float) -> float:
    """int_P^inf (-log(1-1/t) - 1/t)/log t dt on a logarithmic Simpson grid."""
    # integrand ~ 1/(2 t^2 log t); substitute t = P e^u, du-integral to u = 40
    u = np.linspace(0.0, 40.0, 4001)
    t = P * np.exp(u)
    f = _b_integrand(t) * t  # dt = t du
    h = u[1] - u[0]
    w = np.ones_like(f)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.sum(w * f) * h / 3.0)


def compute_constants(
    prime_limit: int, limit: int = DEFAULT_SIEVE_LIMIT
) -> MertensConstants:
    """Compute C0, E, B using primes up to ``prime_limit``.

    The tail beyond the largest sieved prime is estimated with the
    density-one model dtheta ~ dt and certified against the Chebyshev-type
    window; ``tail_bound`` covers both constants simultaneously.
    """
    P = int(prime_limit)
    if P < 100:
        raise ValueError(f"prime_limit must be >= 100, got {P}")
    if P > limit:
        raise LimitExceededError(f"prime_limit={P} exceeds sieve limit {limit}")
    c0 = euler_constant()

    e_parts = []
    b_parts = []
    theta_parts = []
    for primes in iter_prime_segments(P):
        e_parts.append(_e_term_partials(primes))
        b_parts.append(_b_term_partials(primes))
        theta_parts.append(float(np.sum(np.log(primes.astype(np.float64)))))
    e_psum = math.fsum(e_parts)
    b_psum = math.fsum(b_parts)
    theta_p = math.fsum(theta_parts)

    Pf = float(P)
    # E tail: int_P^inf dtheta(t)/(t(t-1)) by parts; with f = 1/(t(t-1)),
    # -f' weight I(P) = log(P/(P-1)) + 1/(P-1) for the density-one model.
    i_p = math.log(Pf / (Pf - 1.0)) + 1.0 / (Pf - 1.0)
    e_tail = i_p - theta_p / (Pf * (Pf - 1.0))
    e_width = max(THETA_UPPER - 1.0, 1.0 - 0.84) * i_p

    # B tail: same construction for f = (-log(1-1/t)-1/t)/log t.
    b_f_at_p = float(_b_integrand(np.array([Pf]))[0])
    b_int = _b_tail_integral(Pf)
    b_weight = Pf * b_f_at_p + b_int  # int_P^inf t (-f'(t)) dt
    b_tail = b_weight - theta_p * b_f_at_p  # = (P - theta(P)) f(P) + int f dt
    b_width = max(THETA_UPPER - 1.0, 1.0 - 0.84) * b_weight

    e_const = -c0 - e_psum - e_tail
    b_const = c0 - b_psum - b_tail
    return MertensConstants(
        c0=c0,
        e_const=e_const,
        b_const=b_const,
        prime_limit=P,
        tail_bound=e_width + b_width,
        e_prime_sum=e_psum,
        b_prime_sum=b_psum,
        e_tail_estimate=e_tail,
        b_tail_estimate=b_tail,
    )
