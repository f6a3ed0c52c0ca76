"""Segmented prime generation and exact prime/prime-power sums.

All sums are accumulated in fixed ascending order with compensated
summation (Kahan per segment under the numba backend, pairwise under
numpy), and segment partials are combined exactly with ``math.fsum`` so a
partition of [2, x] reproduces the single-pass result to roundoff.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

from mertensbias import _kernels
from mertensbias.errors import LimitExceededError

DEFAULT_SIEVE_LIMIT = 10**9
SEGMENT_SIZE = 1 << 20

_CACHE_MAGIC = b"MBLSIEVE1"


@dataclass(frozen=True)
class SieveSegment:
    """Primes within the inclusive range [lo, hi]."""

    lo: int
    hi: int
    primes: np.ndarray


@dataclass(frozen=True)
class PrimeSumLedger:
    """Prime and prime-power sums over p, p^k <= x.

    Fields: ``sum_logp_over_p`` = sum log p / p, ``sum_recip_p`` = sum 1/p,
    ``psi`` = sum of Lambda(n) for n <= x, ``theta`` = sum log p,
    ``lambda_over_n`` = sum Lambda(n)/n, ``neg_log_product`` =
    -sum log(1 - 1/p). Immutable and safe to share across threads.
    """

    x: float
    sum_logp_over_p: float
    sum_recip_p: float
    psi: float
    theta: float
    lambda_over_n: float
    neg_log_product: float


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit by a plain in-memory sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_segment(lo: int, hi: int, limit: int = DEFAULT_SIEVE_LIMIT) -> SieveSegment:
    """Exactly the primes in [lo, hi] (inclusive)."""
    lo = int(lo)
    hi = int(hi)
    if not 2 <= lo < hi:
        raise ValueError(f"need 2 <= lo < hi, got lo={lo}, hi={hi}")
    if hi > limit:
        raise LimitExceededError(f"hi={hi} exceeds sieve limit {limit}")
    base = simple_sieve(math.isqrt(hi))
    mask = np.ones(hi - lo + 1, dtype=bool)
    _kernels.mark_composites(mask, lo, base)
    primes = lo + np.flatnonzero(mask).astype(np.int64)
    return SieveSegment(lo=lo, hi=hi, primes=primes)


def iter_prime_segments(limit: int, segment_size: int = SEGMENT_SIZE, cache_dir=None):
    """Yield ascending prime arrays covering [2, limit] segment by segment."""
    limit = int(limit)
    if limit < 2:
        return
    base = simple_sieve(math.isqrt(limit))
    lo = 2
    while lo <= limit:
        hi = min(lo + segment_size - 1, limit)
        primes = None
        if cache_dir is not None:
            primes = _cache_read(cache_dir, lo, hi)
        if primes is None:
            mask = np.ones(hi - lo + 1, dtype=bool)
            _kernels.mark_composites(mask, lo, base)
            primes = lo + np.flatnonzero(mask).astype(np.int64)
            if cache_dir is not None:
                _cache_write(cache_dir, lo, hi, mask)
        yield primes
        lo = hi + 1


def _cache_path(cache_dir, lo, hi):
    return os.path.join(cache_dir, f"seg_{lo}_{hi}.sieve")


def _cache_write(cache_dir, lo, hi, mask) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, lo, hi)
    payload = np.packbits(mask, bitorder="little").tobytes()
    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        f.write(_CACHE_MAGIC)
        f.write(int(lo).to_bytes(8, "little"))
        f.write(int(hi).to_bytes(8, "little"))
        f.write(payload)
    os.replace(tmp, path)


def _cache_read(cache_dir, lo, hi):
    path = _cache_path(cache_dir, lo, hi)
    if not os.path.exists(path):
        return None
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:9] != _CACHE_MAGIC:
        return None
    flo = int.from_bytes(blob[9:17], "little")
    fhi = int.from_bytes(blob[17:25], "little")
    if (flo, fhi) != (lo, hi):
        return None
    n = hi - lo + 1
    mask = np.unpackbits(
        np.frombuffer(blob[25:], dtype=np.uint8), count=n, bitorder="little"
    ).astype(bool)
    return lo + np.flatnonzero(mask).astype(np.int64)


def _integer_kth_root(n: int, k: int) -> int:
    """floor(n**(1/k)) computed exactly."""
    if n < 1:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r > 1 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def prime_power_sums(x: float):
    """Sums over proper prime powers p^k <= x, k >= 2.

    Returns (sum of log p, sum of log p / p^k); the first is psi - theta,
    the second the prime-power part of sum Lambda(n)/n. Enumerates k >= 2
    over primes p <= x^(1/k); terminates since 2^k <= x bounds k.
    """
    fx = int(math.floor(x))
    if fx < 4:
        return 0.0, 0.0
    psi_terms = []
    lam_terms = []
    k = 2
    while 2**k <= fx:
        root = _integer_kth_root(fx, k)
        for p in simple_sieve(root):
            p = int(p)
            lg = math.log(p)
            psi_terms.append(lg)
            lam_terms.append(lg / p**k)
        k += 1
    return math.fsum(psi_terms), math.fsum(lam_terms)


def prime_sums(
    x: float,
    limit: int = DEFAULT_SIEVE_LIMIT,
    segment_size: int = SEGMENT_SIZE,
    cache_dir=None,
) -> PrimeSumLedger:
    """Evaluate every ledger sum exactly over primes/prime powers <= x."""
    x = float(x)
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if x > limit:
        raise LimitExceededError(f"x={x} exceeds sieve limit {limit}")
    fx = int(math.floor(x))
    p1 = []
    p2 = []
    p3 = []
    p4 = []
    for primes in iter_prime_segments(fx, segment_size, cache_dir):
        a, b, c, d = _kernels.ledger_partials(primes.astype(np.float64))
        p1.append(a)
        p2.append(b)
        p3.append(c)
        p4.append(d)
    s_logp_p = math.fsum(p1)
    s_inv_p = math.fsum(p2)
    theta = math.fsum(p3)
    neg_log = math.fsum(p4)
    pp_psi, pp_lam = prime_power_sums(x)
    return PrimeSumLedger(
        x=x,
        sum_logp_over_p=s_logp_p,
        sum_recip_p=s_inv_p,
        psi=theta + pp_psi,
        theta=theta,
        lambda_over_n=s_logp_p + pp_lam,
        neg_log_product=neg_log,
    )
