"""Pure-numpy kernel backend.

Vectorized equivalents of the numba kernels. Summations use numpy's pairwise
reduction over ascending arrays (compensated enough for the accuracy
contracts) with exact carry combination left to the callers.
"""

import math

import numpy as np

from mertensbias._kernels._shared import (
    DEKKER_SPLIT,
    INV_2_53,
    J0_ASYMPT_TERMS,
    J0_HANKEL_C,
    J0_SERIES_COEFFS,
    J0_SERIES_CUT,
    PI_OVER_4,
    SM64_GOLDEN,
    SM64_MIX1,
    SM64_MIX2,
    SQRT_2_OVER_PI,
    TWO_PI_HI,
    TWO_PI_LO,
)


def mark_composites(mask, lo, base_primes):
    """Clear composite positions in ``mask`` covering integers [lo, lo+len).

    ``base_primes`` must contain every prime <= sqrt(lo+len-1). Positions of
    the base primes themselves are left set.
    """
    hi = lo + mask.shape[0] - 1
    for p in base_primes:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        mask[start - lo :: p] = False
    return mask


def ledger_partials(primes):
    """Per-segment sums (log p / p, 1/p, log p, -log(1-1/p)) over ascending primes."""
    if primes.shape[0] == 0:
        return 0.0, 0.0, 0.0, 0.0
    logs = np.log(primes)
    s_logp_p = float(np.sum(logs / primes))
    s_inv_p = float(np.sum(1.0 / primes))
    s_theta = float(np.sum(logs))
    s_neglog = float(-np.sum(np.log1p(-1.0 / primes)))
    return s_logp_p, s_inv_p, s_theta, s_neglog


def positivity_pass(primes, carry_logp, carry_inv, e_const, b_const):
    """Inter-prime infima of M1 and M2 across one segment of primes.

    For each prime q in the segment, evaluates both error terms at the
    left-limit x -> q^- (prime sums exclude q, log terms use q) and returns
    the segment minima plus updated carries.
    """
    if primes.shape[0] == 0:
        return carry_logp, carry_inv, math.inf, 0.0, math.inf, 0.0
    logs = np.log(primes)
    terms1 = logs / primes
    terms2 = 1.0 / primes
    pre1 = carry_logp + np.concatenate(([0.0], np.cumsum(terms1)[:-1]))
    pre2 = carry_inv + np.concatenate(([0.0], np.cumsum(terms2)[:-1]))
    m1 = pre1 - logs - e_const
    m2 = pre2 - np.log(logs) - b_const
    i1 = int(np.argmin(m1))
    i2 = int(np.argmin(m2))
    carry_logp += float(np.sum(terms1))
    carry_inv += float(np.sum(terms2))
    return (
        carry_logp,
        carry_inv,
        float(m1[i1]),
        float(primes[i1]),
        float(m2[i2]),
        float(primes[i2]),
    )


def density_pass(primes, prev_prime, carry_logp, carry_inv, e_const, b_const, upper_x):
    """Accumulate the dt/t measure of {M1 > 0} and {M2 > 0} over one segment.

    Within an inter-prime interval [p, q) both error terms decrease
    continuously, so each is positive exactly below a closed-form crossing
    point; the interval contributes fully, partially, or not at all.
    Handles [prev_prime, primes[0]) (skipped when prev_prime == 0) and the
    intervals interior to this segment; the caller closes the final interval
    at ``upper_x``. Carries are the sums up to the previous segment's end.
    """
    if primes.shape[0] == 0:
        return carry_logp, carry_inv, 0.0, 0.0, prev_prime
    logs = np.log(primes)
    terms1 = logs / primes
    terms2 = 1.0 / primes
    # Sums up to and including each prime p (interval [p, q) uses sums at p).
    s1 = carry_logp + np.cumsum(terms1)
    s2 = carry_inv + np.cumsum(terms2)
    lefts = primes[:-1]
    rights = primes[1:]
    sums1 = s1[:-1]
    sums2 = s2[:-1]
    if prev_prime > 0:
        lefts = np.concatenate(([prev_prime], lefts))
        rights = np.concatenate(([primes[0]], rights))
        sums1 = np.concatenate(([carry_logp], sums1))
        sums2 = np.concatenate(([carry_inv], sums2))
    left = np.minimum(lefts, upper_x)
    right = np.minimum(rights, upper_x)
    # M1(t) = s1 - log t - E > 0 iff t < exp(s1 - E); M2 analogously with log log.
    cross1 = np.exp(sums1 - e_const)
    cross2 = np.exp(np.exp(sums2 - b_const))
    top1 = np.clip(np.minimum(cross1, right), left, None)
    top2 = np.clip(np.minimum(cross2, right), left, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        meas1 = float(np.sum(np.where(right > left, np.log(top1 / left), 0.0)))
        meas2 = float(np.sum(np.where(right > left, np.log(top2 / left), 0.0)))
    return (
        carry_logp + float(np.sum(terms1)),
        carry_inv + float(np.sum(terms2)),
        meas1,
        meas2,
        float(primes[-1]),
    )


def _reduced_phase(gammas, y):
    """gamma*y mod 2*pi via Dekker two-product, accurate to ~1e-12 absolute."""
    p = gammas * y
    g1 = gammas * DEKKER_SPLIT
    gh = g1 - (g1 - gammas)
    gl = gammas - gh
    y1 = y * DEKKER_SPLIT
    yh = y1 - (y1 - y)
    yl = y - yh
    e = ((gh * yh - p) + gh * yl + gl * yh) + gl * yl
    k = np.rint(p / TWO_PI_HI)
    q = k * TWO_PI_HI
    # error of k*TWO_PI_HI via a second two-product
    k1 = k * DEKKER_SPLIT
    kh = k1 - (k1 - k)
    kl = k - kh
    th1 = TWO_PI_HI * DEKKER_SPLIT
    thh = th1 - (th1 - TWO_PI_HI)
    thl = TWO_PI_HI - thh
    qe = (kh * thh - q) + kh * thl + kl * thh + kl * thl
    return (p - q) + (e - qe - k * TWO_PI_LO)


def zero_phase_sums(gammas, y):
    """Zero-ordinate trigonometric sums used by the explicit formulas.

    Returns (sum of [(-1/2)cos(g*y) + g*sin(g*y)] / (1/4+g^2),
             sum of sin(g*y) / g) over ascending ordinates g.
    """
    if gammas.shape[0] == 0:
        return 0.0, 0.0
    r = _reduced_phase(gammas, y)
    c = np.cos(r)
    s = np.sin(r)
    denom = 0.25 + gammas * gammas
    s_e14 = float(np.sum((-0.5 * c + gammas * s) / denom))
    s_sine = float(np.sum(s / gammas))
    return s_e14, s_sine


def _j0_series(x):
    u = x * x
    acc = np.full_like(u, J0_SERIES_COEFFS[0])
    for c in J0_SERIES_COEFFS[1:]:
        acc = acc * u + c
    return acc


def _j0_asympt(x):
    w = 1.0 / (8.0 * x)
    w2 = w * w
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    sign = 1.0
    for k in range(J0_ASYMPT_TERMS):
        p += sign * J0_HANKEL_C[2 * k] * w2**k
        q += sign * J0_HANKEL_C[2 * k + 1] * w * w2**k
        sign = -sign
    chi = x - PI_OVER_4
    return SQRT_2_OVER_PI / np.sqrt(x) * (p * np.cos(chi) + q * np.sin(chi))


def j0_array(x):
    """Bessel J0 on an array; series for |x| <= 13, Hankel expansion beyond."""
    ax = np.abs(np.asarray(x, dtype=np.float64))
    out = np.empty_like(ax)
    small = ax <= J0_SERIES_CUT
    if np.any(small):
        out[small] = _j0_series(ax[small])
    if np.any(~small):
        out[~small] = _j0_asympt(ax[~small])
    return out


def char_function_values(inv_scale, t_nodes, sigma2_tail):
    """R(t) = prod_j J0(2 t / sqrt(1/4+g_j^2)) * exp(-t^2 sigma2_tail / 2).

    ``inv_scale`` holds 1/sqrt(1/4+g^2) per table zero. Chunked over t to
    bound the intermediate matrix size.
    """
    t_nodes = np.asarray(t_nodes, dtype=np.float64)
    out = np.empty_like(t_nodes)
    chunk = max(1, int(4_000_000 // max(1, inv_scale.shape[0])))
    for i in range(0, t_nodes.shape[0], chunk):
        t = t_nodes[i : i + chunk]
        args = 2.0 * t[:, None] * inv_scale[None, :]
        vals = j0_array(args.ravel()).reshape(args.shape)
        out[i : i + chunk] = np.prod(vals, axis=1)
    out *= np.exp(-0.5 * sigma2_tail * t_nodes * t_nodes)
    return out


def _sm64(counters, seed):
    z = (np.uint64(seed) + (counters + np.uint64(1)) * np.uint64(SM64_GOLDEN)).astype(
        np.uint64
    )
    z = (z ^ (z >> np.uint64(30))) * np.uint64(SM64_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(SM64_MIX2)
    return z ^ (z >> np.uint64(31))


def _uniform53(counters, seed):
    return (_sm64(counters, seed) >> np.uint64(11)).astype(np.float64) * INV_2_53


def sample_z_values(inv_scale, sigma_tail, n, seed):
    """Draw n realizations of 1 - 2 sum_j cos(theta_j)/s_j + sigma_tail*gauss.

    Angles are uniform on [0, 2pi) from the SplitMix64 counter stream; the
    Gaussian tail term uses Box-Muller on two further counter slots. Sample i
    owns counters [i*(m+2), (i+1)*(m+2)).
    """
    m = inv_scale.shape[0]
    k = m + 2
    out = np.empty(n, dtype=np.float64)
    chunk = max(1, int(4_000_000 // k))
    two_pi = 2.0 * math.pi
    for i0 in range(0, n, chunk):
        nn = min(chunk, n - i0)
        base = (np.arange(i0, i0 + nn, dtype=np.uint64) * np.uint64(k))[:, None]
        ctr = base + np.arange(k, dtype=np.uint64)[None, :]
        u = _uniform53(ctr.ravel(), seed).reshape(nn, k)
        acc = np.sum(np.cos(two_pi * u[:, :m]) * inv_scale[None, :], axis=1)
        u1 = u[:, m] + INV_2_53  # keep log argument away from zero
        gauss = np.sqrt(-2.0 * np.log(u1)) * np.cos(two_pi * u[:, m + 1])
        out[i0 : i0 + nn] = 1.0 - 2.0 * acc + sigma_tail * gauss
    return out
