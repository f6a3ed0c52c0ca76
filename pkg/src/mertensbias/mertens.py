"""Mertens error terms: evaluation, positivity certification, residual checks.

M1(x) = sum_{p<=x} log p / p - log x - E
M2(x) = sum_{p<=x} 1/p - log log x - B

Between consecutive primes both functions decrease continuously, so interval
infima sit at the left-limit of the next prime; positivity and logarithmic
densities are certified per inter-prime interval, not on a sample grid.
"""

import math
from dataclasses import dataclass

import numpy as np

from mertensbias import _kernels
from mertensbias.constants import MertensConstants
from mertensbias.errors import LimitExceededError
from mertensbias.primes import (
    DEFAULT_SIEVE_LIMIT,
    _integer_kth_root,
    iter_prime_segments,
    prime_sums,
    simple_sieve,
)


@dataclass(frozen=True)
class MertensSample:
    x: float
    m1: float
    m2: float
    script_e: float  # sqrt(x) * m1
    script_e2: float  # sqrt(x) * log(x) * m2


@dataclass(frozen=True)
class PositivityReport:
    limit: int
    verified: bool
    min_m1: float
    min_m2: float
    argmin_m1: float
    argmin_m2: float
    intervals_checked: int


@dataclass(frozen=True)
class DensityReport:
    which: str
    upper_x: float
    lower_density: float
    upper_density: float


def _check_x(x: float) -> float:
    x = float(x)
    if x <= 1.0:
        raise ValueError(f"x must be > 1 (log log x undefined), got {x}")
    return x


def _sample_from_sums(x, s_logp_p, s_inv_p, constants) -> MertensSample:
    lx = math.log(x)
    m1 = s_logp_p - lx - constants.e_const
    m2 = s_inv_p - math.log(lx) - constants.b_const
    rx = math.sqrt(x)
    return MertensSample(x=x, m1=m1, m2=m2, script_e=rx * m1, script_e2=rx * lx * m2)


def evaluate(x: float, constants: MertensConstants) -> MertensSample:
    """Exact sieve evaluation of both error terms at one point."""
    x = _check_x(x)
    ledger = prime_sums(x)
    return _sample_from_sums(x, ledger.sum_logp_over_p, ledger.sum_recip_p, constants)


def evaluate_many(
    xs, constants: MertensConstants, cache_dir=None
) -> list[MertensSample]:
    """Evaluate at many points in one streaming pass over the primes."""
    xs = [_check_x(x) for x in xs]
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    out: list[MertensSample | None] = [None] * len(xs)
    parts1: list[float] = []
    parts2: list[float] = []
    pos = 0
    x_max = xs[order[-1]]
    for primes in iter_prime_segments(int(math.floor(x_max)), cache_dir=cache_dir):
        pf = primes.astype(np.float64)
        logs = np.log(pf)
        c1 = np.cumsum(logs / pf)
        c2 = np.cumsum(1.0 / pf)
        s1 = math.fsum(parts1)
        s2 = math.fsum(parts2)
        while pos < len(order) and xs[order[pos]] < float(primes[-1]) + 1.0:
            x = xs[order[pos]]
            k = int(np.searchsorted(primes, math.floor(x), side="right"))
            sub1 = s1 + (float(c1[k - 1]) if k > 0 else 0.0)
            sub2 = s2 + (float(c2[k - 1]) if k > 0 else 0.0)
            out[order[pos]] = _sample_from_sums(x, sub1, sub2, constants)
            pos += 1
        parts1.append(float(np.sum(logs / pf)))
        parts2.append(float(np.sum(1.0 / pf)))
    # points at or beyond the last prime
    s1 = math.fsum(parts1)
    s2 = math.fsum(parts2)
    while pos < len(order):
        x = xs[order[pos]]
        out[order[pos]] = _sample_from_sums(x, s1, s2, constants)
        pos += 1
    return out  # type: ignore[return-value]


def verify_positivity(
    limit: int,
    constants: MertensConstants,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    cache_dir=None,
) -> PositivityReport:
    """Certify M1 > 0 and M2 > 0 on (1, limit] via inter-prime infima.

    Each inter-prime interval's infimum is attained at the left-limit of its
    right endpoint; the final partial interval is closed at x = limit.
    """
    limit = int(limit)
    if limit < 10:
        raise ValueError(f"limit must be >= 10, got {limit}")
    if limit > sieve_limit:
        raise LimitExceededError(f"limit={limit} exceeds sieve capacity {sieve_limit}")
    s1 = 0.0
    s2 = 0.0
    min1 = math.inf
    arg1 = 0.0
    min2 = math.inf
    arg2 = 0.0
    checked = 0
    first = True
    for primes in iter_prime_segments(limit, cache_dir=cache_dir):
        pf = primes.astype(np.float64)
        if first:
            # skip the evaluation at 2^- (no inter-prime interval before 2)
            s1 += math.log(2.0) / 2.0
            s2 += 0.5
            pf = pf[1:]
            first = False
        s1, s2, m1, a1, m2, a2 = _kernels.positivity_pass(
            pf, s1, s2, constants.e_const, constants.b_const
        )
        checked += pf.shape[0]
        if m1 < min1:
            min1, arg1 = m1, a1
        if m2 < min2:
            min2, arg2 = m2, a2
    end = _sample_from_sums(float(limit), s1, s2, constants)
    checked += 1
    if end.m1 < min1:
        min1, arg1 = end.m1, float(limit)
    if end.m2 < min2:
        min2, arg2 = end.m2, float(limit)
    return PositivityReport(
        limit=limit,
        verified=bool(min1 > 0.0 and min2 > 0.0),
        min_m1=min1,
        min_m2=min2,
        argmin_m1=arg1,
        argmin_m2=arg2,
        intervals_checked=checked,
    )


def scan(
    x_min: float,
    x_max: float,
    points: int,
    constants: MertensConstants,
    spacing: str = "log",
    cache_dir=None,
):
    """Sample both error terms on a grid and count sign changes.

    Returns (samples, sign_changes) where sign_changes maps each of
    m1/m2/script_e to the number of strict sign alternations along the grid.
    """
    x_min = float(x_min)
    x_max = float(x_max)
    points = int(points)
    if not (1.0 < x_min < x_max) or points < 2:
        raise ValueError(
            f"need 1 < x_min < x_max and points >= 2, got ({x_min}, {x_max}, {points})"
        )
    if spacing == "log":
        grid = np.exp(np.linspace(math.log(x_min), math.log(x_max), points))
    elif spacing == "linear":
        grid = np.linspace(x_min, x_max, points)
    else:
        raise ValueError(f"unknown spacing {spacing!r}")
    grid = grid.tolist()
    grid[0], grid[-1] = x_min, x_max
    samples = evaluate_many(grid, constants, cache_dir=cache_dir)

    def _changes(values):
        signs = np.sign(values)
        return int(np.sum(signs[1:] * signs[:-1] < 0))

    sign_changes = {
        "m1": _changes([s.m1 for s in samples]),
        "m2": _changes([s.m2 for s in samples]),
        "script_e": _changes([s.script_e for s in samples]),
    }
    return samples, sign_changes


def lambda_values(lo: int, hi: int) -> np.ndarray:
    """von Mangoldt Lambda(n) for n in [lo, hi] (inclusive)."""
    n = hi - lo + 1
    lam = np.zeros(n, dtype=np.float64)
    base = simple_sieve(math.isqrt(hi))
    mask = np.ones(n, dtype=bool)
    if lo <= 1:
        mask[: 2 - lo] = False
    _kernels.mark_composites(mask, lo, base)
    idx = np.flatnonzero(mask)
    lam[idx] = np.log((lo + idx).astype(np.float64))
    k = 2
    while 2**k <= hi:
        root = _integer_kth_root(hi, k)
        for p in simple_sieve(root):
            pk = int(p) ** k
            if pk >= lo:
                lam[pk - lo] = math.log(p)
        k += 1
    return lam


def residuals(
    x: float,
    constants: MertensConstants,
    x_max_factor: float = 100.0,
) -> dict:
    """Residuals of the three prime-sum identities at x.

    lemma31: M1(x) - [sum_{n<=x} Lambda(n)/n - log x + C0]        (O(1/sqrt x))
    lemma41: M1(x) - [(psi(x)-x)/x - int_x^{Xmax} (psi(t)-t)/t^2]  (O(1/sqrt x))
    lemma51: M2(x) - [-sum_{p<=x} log(1-1/p) - log log x - C0]     (O(1/x))

    The improper integral is truncated at Xmax = x_max_factor * x; its step
    integrand is integrated exactly over unit intervals and the truncated
    tail is estimated (not bounded) by max |psi(t)-t| over the last dyadic
    block divided by Xmax, reported as ``lemma41_tail_estimate``.
    """
    x = float(x)
    if x < 100:
        raise ValueError(f"x must be >= 100, got {x}")
    if x_max_factor < 100:
        raise ValueError("integral cutoff must be at least 100x")
    ledger = prime_sums(x)
    sample = _sample_from_sums(x, ledger.sum_logp_over_p, ledger.sum_recip_p, constants)
    c0 = constants.c0
    lx = math.log(x)
    lemma31 = sample.m1 - (ledger.lambda_over_n - lx + c0)
    lemma51 = sample.m2 - (ledger.neg_log_product - math.log(lx) - c0)

    # int_x^{Xmax} (psi(t)-t)/t^2 dt, exact over the step function's unit
    # pieces: psi(n) (1/a - 1/b) per piece [a, b), minus log(Xmax/x) overall.
    x_max = int(round(x * x_max_factor))
    fx = int(math.floor(x))
    psi_x = ledger.psi
    integral = 0.0
    tail_max = 0.0
    start = fx
    carry = psi_x  # invariant: carry == psi(start)
    if x > fx:
        # partial first piece [x, fx+1); remaining pieces start at fx+1
        integral += psi_x * (1.0 / x - 1.0 / (fx + 1))
        start = fx + 1
        carry = psi_x + float(lambda_values(start, start)[0])
    integral_parts = []
    a = start
    chunk = 1 << 21
    while a < x_max:
        b = min(a + chunk - 1, x_max - 1)
        # psi at piece left endpoints n = a..b needs Lambda over (start, b]
        lam = lambda_values(a + 1, b + 1)
        psi_left = carry + np.concatenate(([0.0], np.cumsum(lam[:-1])))
        nn = np.arange(a, b + 1, dtype=np.float64)
        integral_parts.append(float(np.sum(psi_left * (1.0 / nn - 1.0 / (nn + 1.0)))))
        if b + 1 >= x_max // 2:
            sel = nn >= max(a, x_max // 2)
            if np.any(sel):
                tail_max = max(tail_max, float(np.max(np.abs((psi_left - nn)[sel]))))
        carry += float(np.sum(lam))
        a = b + 1
    integral += math.fsum(integral_parts) - math.log(x_max / x)
    lemma41 = sample.m1 - ((psi_x - x) / x - integral)
    return {
        "lemma31": lemma31,
        "lemma41": lemma41,
        "lemma51": lemma51,
        "lemma41_tail_estimate": tail_max / x_max,
        "x": x,
        "x_max": float(x_max),
    }


def error_statistics(x: float, sieve_limit: int = DEFAULT_SIEVE_LIMIT) -> dict:
    """Unit-step averages of the prime-counting error |psi(t) - t|.

    cramer_avg = (1/x) sum_{t=2}^{floor(x)} |psi(t)-t| / sqrt(t)
    dyadic_integral = sum_{t=ceil(x)}^{floor(2x)} |psi(t)-t|, reported with
    its ratio to x*sqrt(x).
    """
    x = float(x)
    if x < 10:
        raise ValueError(f"x must be >= 10, got {x}")
    if 2 * x > sieve_limit:
        raise LimitExceededError(f"2x={2 * x} exceeds sieve capacity {sieve_limit}")
    fx = int(math.floor(x))
    f2x = int(math.floor(2 * x))
    cx = int(math.ceil(x))
    cramer_parts = []
    dyadic_parts = []
    # psi(t) built from t=2 upward: carry starts at 0 before t=2
    carry = 0.0
    a = 2
    chunk = 1 << 21
    while a <= f2x:
        b = min(a + chunk - 1, f2x)
        lam = lambda_values(a, b)
        psi = carry + np.cumsum(lam)
        carry = float(psi[-1])
        t = np.arange(a, b + 1, dtype=np.float64)
        dev = np.abs(psi - t)
        in_cramer = t <= fx
        if np.any(in_cramer):
            cramer_parts.append(float(np.sum((dev / np.sqrt(t))[in_cramer])))
        in_dyadic = t >= cx
        if np.any(in_dyadic):
            dyadic_parts.append(float(np.sum(dev[in_dyadic])))
        a = b + 1
    cramer_avg = math.fsum(cramer_parts) / x
    dyadic = math.fsum(dyadic_parts)
    return {
        "cramer_avg": cramer_avg,
        "dyadic_integral": dyadic,
        "dyadic_ratio": dyadic / (x * math.sqrt(x)),
        "x": x,
    }


def empirical_log_density(
    which: str,
    upper_x: float,
    constants: MertensConstants,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    cache_dir=None,
) -> DensityReport:
    """Logarithmic density of {t in [2, upper_x] : M_i(t) > 0}.

    Integrates dt/t over the positivity set using the closed-form crossing
    point inside each inter-prime interval, normalized by the full window
    measure log(upper_x) - log(2).
    """
    which = which.lower()
    if which not in ("w1", "w2"):
        raise ValueError(f"which must be 'w1' or 'w2', got {which!r}")
    upper_x = float(upper_x)
    if upper_x < 10:
        raise ValueError(f"upper_x must be >= 10, got {upper_x}")
    if upper_x > sieve_limit:
        raise LimitExceededError(f"upper_x={upper_x} exceeds sieve capacity")
    s1 = 0.0
    s2 = 0.0
    meas1 = 0.0
    meas2 = 0.0
    prev = 0.0
    for primes in iter_prime_segments(int(math.floor(upper_x)), cache_dir=cache_dir):
        s1, s2, d1, d2, prev = _kernels.density_pass(
            primes.astype(np.float64),
            prev,
            s1,
            s2,
            constants.e_const,
            constants.b_const,
            upper_x,
        )
        meas1 += d1
        meas2 += d2
    if prev > 0.0 and prev < upper_x:
        cross1 = math.exp(s1 - constants.e_const)
        top1 = min(cross1, upper_x)
        if top1 > prev:
            meas1 += math.log(top1 / prev)
        cross2 = math.exp(math.exp(s2 - constants.b_const))
        top2 = min(cross2, upper_x)
        if top2 > prev:
            meas2 += math.log(top2 / prev)
    total = math.log(upper_x) - math.log(2.0)
    value = (meas1 if which == "w1" else meas2) / total
    value = min(max(value, 0.0), 1.0)
    return DensityReport(
        which=which, upper_x=upper_x, lower_density=value, upper_density=value
    )
