"""numba @njit kernel backend.

Explicit loops with Kahan-compensated accumulation in fixed ascending order.
Signatures mirror ``numpy_impl`` exactly; both backends are selectable at
import time via MERTENSBIAS_BACKEND.
"""

import math

import numpy as np
from numba import njit

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

_SM64_GOLDEN = np.uint64(SM64_GOLDEN)
_SM64_MIX1 = np.uint64(SM64_MIX1)
_SM64_MIX2 = np.uint64(SM64_MIX2)


@njit(cache=True)
def mark_composites(mask, lo, base_primes):
    hi = lo + mask.shape[0] - 1
    for i in range(base_primes.shape[0]):
        p = base_primes[i]
        if p * p > hi:
            break
        start = p * p
        first_multiple = ((lo + p - 1) // p) * p
        if first_multiple > start:
            start = first_multiple
        for j in range(start - lo, mask.shape[0], p):
            mask[j] = False
    return mask


@njit(cache=True)
def ledger_partials(primes):
    s1 = 0.0
    c1 = 0.0
    s2 = 0.0
    c2 = 0.0
    s3 = 0.0
    c3 = 0.0
    s4 = 0.0
    c4 = 0.0
    for i in range(primes.shape[0]):
        p = primes[i]
        lg = math.log(p)
        # Kahan updates, one per ledger component
        y = lg / p - c1
        t = s1 + y
        c1 = (t - s1) - y
        s1 = t
        y = 1.0 / p - c2
        t = s2 + y
        c2 = (t - s2) - y
        s2 = t
        y = lg - c3
        t = s3 + y
        c3 = (t - s3) - y
        s3 = t
        y = -math.log1p(-1.0 / p) - c4
        t = s4 + y
        c4 = (t - s4) - y
        s4 = t
    return s1, s2, s3, s4


@njit(cache=True)
def positivity_pass(primes, carry_logp, carry_inv, e_const, b_const):
    min1 = math.inf
    arg1 = 0.0
    min2 = math.inf
    arg2 = 0.0
    s1 = carry_logp
    s2 = carry_inv
    for i in range(primes.shape[0]):
        q = primes[i]
        lq = math.log(q)
        m1 = s1 - lq - e_const
        m2 = s2 - math.log(lq) - b_const
        if m1 < min1:
            min1 = m1
            arg1 = q
        if m2 < min2:
            min2 = m2
            arg2 = q
        s1 += lq / q
        s2 += 1.0 / q
    return s1, s2, min1, arg1, min2, arg2


@njit(cache=True)
def density_pass(primes, prev_prime, carry_logp, carry_inv, e_const, b_const, upper_x):
    s1 = carry_logp
    s2 = carry_inv
    meas1 = 0.0
    meas2 = 0.0
    n = primes.shape[0]
    if n == 0:
        return s1, s2, meas1, meas2, prev_prime
    left_p = prev_prime
    for i in range(n):
        q = primes[i]
        if left_p > 0.0:
            # interval [left_p, q) with sums s1, s2 taken at left_p
            left = min(left_p, upper_x)
            right = min(q, upper_x)
            if right > left:
                cross1 = math.exp(s1 - e_const)
                cross2 = math.exp(math.exp(s2 - b_const))
                top1 = min(cross1, right)
                if top1 > left:
                    meas1 += math.log(top1 / left)
                top2 = min(cross2, right)
                if top2 > left:
                    meas2 += math.log(top2 / left)
        lq = math.log(q)
        s1 += lq / q
        s2 += 1.0 / q
        left_p = q
    return s1, s2, meas1, meas2, left_p


@njit(cache=True, inline="always")
def _reduced_phase_scalar(g, y):
    p = g * y
    g1 = g * DEKKER_SPLIT
    gh = g1 - (g1 - g)
    gl = g - gh
    y1 = y * DEKKER_SPLIT
    yh = y1 - (y1 - y)
    yl = y - yh
    e = ((gh * yh - p) + gh * yl + gl * yh) + gl * yl
    k = round(p / TWO_PI_HI)
    q = k * TWO_PI_HI
    k1 = k * DEKKER_SPLIT
    kh = k1 - (k1 - k)
    kl = k - kh
    th1 = TWO_PI_HI * DEKKER_SPLIT
    thh = th1 - (th1 - TWO_PI_HI)
    thl = TWO_PI_HI - thh
    qe = (kh * thh - q) + kh * thl + kl * thh + kl * thl
    return (p - q) + (e - qe - k * TWO_PI_LO)


@njit(cache=True)
def zero_phase_sums(gammas, y):
    s_e14 = 0.0
    c_e14 = 0.0
    s_sine = 0.0
    c_sine = 0.0
    for i in range(gammas.shape[0]):
        g = gammas[i]
        r = _reduced_phase_scalar(g, y)
        cr = math.cos(r)
        sr = math.sin(r)
        term = (-0.5 * cr + g * sr) / (0.25 + g * g)
        yk = term - c_e14
        t = s_e14 + yk
        c_e14 = (t - s_e14) - yk
        s_e14 = t
        term = sr / g
        yk = term - c_sine
        t = s_sine + yk
        c_sine = (t - s_sine) - yk
        s_sine = t
    return s_e14, s_sine


@njit(cache=True, inline="always")
def _j0_scalar(x):
    ax = abs(x)
    if ax <= J0_SERIES_CUT:
        u = ax * ax
        acc = J0_SERIES_COEFFS[0]
        for i in range(1, J0_SERIES_COEFFS.shape[0]):
            acc = acc * u + J0_SERIES_COEFFS[i]
        return acc
    w = 1.0 / (8.0 * ax)
    w2 = w * w
    p = 0.0
    q = 0.0
    sign = 1.0
    w2k = 1.0
    for k in range(J0_ASYMPT_TERMS):
        p += sign * J0_HANKEL_C[2 * k] * w2k
        q += sign * J0_HANKEL_C[2 * k + 1] * w * w2k
        sign = -sign
        w2k *= w2
    chi = ax - PI_OVER_4
    return SQRT_2_OVER_PI / math.sqrt(ax) * (p * math.cos(chi) + q * math.sin(chi))


@njit(cache=True)
def j0_array(x):
    out = np.empty(x.shape[0], dtype=np.float64)
    for i in range(x.shape[0]):
        out[i] = _j0_scalar(x[i])
    return out


@njit(cache=True)
def char_function_values(inv_scale, t_nodes, sigma2_tail):
    out = np.empty(t_nodes.shape[0], dtype=np.float64)
    for i in range(t_nodes.shape[0]):
        t = t_nodes[i]
        acc = 1.0
        for j in range(inv_scale.shape[0]):
            acc *= _j0_scalar(2.0 * t * inv_scale[j])
        out[i] = acc * math.exp(-0.5 * sigma2_tail * t * t)
    return out


@njit(cache=True, inline="always")
def _sm64_scalar(counter, seed):
    z = (seed + (counter + np.uint64(1)) * _SM64_GOLDEN) & np.uint64(0xFFFFFFFFFFFFFFFF)
    z = (z ^ (z >> np.uint64(30))) * _SM64_MIX1
    z = (z ^ (z >> np.uint64(27))) * _SM64_MIX2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def sample_z_values(inv_scale, sigma_tail, n, seed):
    m = inv_scale.shape[0]
    k = np.uint64(m + 2)
    seed_u = np.uint64(seed)
    out = np.empty(n, dtype=np.float64)
    two_pi = 2.0 * math.pi
    for i in range(n):
        base = np.uint64(i) * k
        acc = 0.0
        for j in range(m):
            u = (_sm64_scalar(base + np.uint64(j), seed_u) >> np.uint64(11)) * INV_2_53
            acc += math.cos(two_pi * u) * inv_scale[j]
        u1 = (_sm64_scalar(base + np.uint64(m), seed_u) >> np.uint64(11)) * INV_2_53 + INV_2_53
        u2 = (_sm64_scalar(base + np.uint64(m + 1), seed_u) >> np.uint64(11)) * INV_2_53
        gauss = math.sqrt(-2.0 * math.log(u1)) * math.cos(two_pi * u2)
        out[i] = 1.0 - 2.0 * acc + sigma_tail * gauss
    return out
