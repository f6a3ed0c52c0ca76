"""Constants shared by both kernel backends.

Keeping the polynomial coefficients and RNG constants in one place makes the
two backends numerically interchangeable: they evaluate the same formulas in
(almost) the same order and differ only in accumulation strategy.
"""

import math

import numpy as np

# --- Bessel J0 -------------------------------------------------------------
# Power series J0(x) = sum_k (-1)^k (x/2)^{2k} / (k!)^2 used for |x| <= J0_SERIES_CUT;
# beyond that the Hankel asymptotic expansion takes over. The cut balances
# series cancellation (grows with x) against the asymptotic floor (shrinks).
J0_SERIES_CUT = 13.0
J0_SERIES_TERMS = 42

_series = [1.0]
for _k in range(1, J0_SERIES_TERMS):
    _series.append(-_series[-1] / (4.0 * _k * _k))
# Horner coefficients in u = x^2, highest order first.
J0_SERIES_COEFFS = np.array(_series[::-1], dtype=np.float64)

# Hankel asymptotic: J0(x) ~ sqrt(2/(pi x)) [P(x) cos(x-pi/4) - Q(x) sin(x-pi/4)],
# P = sum_k (-1)^k c_{2k} / (8x)^{2k}, Q = sum_k (-1)^k c_{2k+1} / (8x)^{2k+1},
# c_m = prod_{j=1..m} (2j-1)^2 / m!. Truncated where terms stop decreasing.
J0_ASYMPT_TERMS = 13
_c = [1.0]
for _m in range(1, 2 * J0_ASYMPT_TERMS + 2):
    _c.append(_c[-1] * (2.0 * _m - 1.0) ** 2 / _m)
J0_HANKEL_C = np.array(_c, dtype=np.float64)

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
PI_OVER_4 = math.pi / 4.0

# --- double-double reduction of gamma*y mod 2*pi ----------------------------
TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16
DEKKER_SPLIT = 134217729.0  # 2^27 + 1

# --- SplitMix64 counter-based generator -------------------------------------
# Random access: value(seed, k) = finalize(seed + (k+1) * GOLDEN). Uniform
# doubles take the top 53 bits. Fixed here so both backends (and any future
# port) produce identical streams.
SM64_GOLDEN = 0x9E3779B97F4A7C15
SM64_MIX1 = 0xBF58476D1CE4E5B9
SM64_MIX2 = 0x94D049BB133111EB
U64_MASK = 0xFFFFFFFFFFFFFFFF
INV_2_53 = 1.0 / 9007199254740992.0  # 2^-53
