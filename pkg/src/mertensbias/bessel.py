"""Bessel function of the first kind of order zero.

Power series sum_k (-1)^k (t/2)^{2k} / (k!)^2 for |t| <= 13, Hankel
large-argument expansion beyond. Worst-case absolute error ~1e-12 near the
switch point, far better elsewhere; relative accuracy degrades only in the
immediate neighborhood of the function's zeros.
"""

import math

import numpy as np

from mertensbias import _kernels


def bessel_j0(t):
    """J0 evaluated at a scalar or array argument."""
    if np.isscalar(t) or np.ndim(t) == 0:
        tf = float(t)
        if not math.isfinite(tf):
            raise ValueError(f"bessel_j0 requires a finite argument, got {t!r}")
        return float(_kernels.j0_array(np.array([tf], dtype=np.float64))[0])
    arr = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError("bessel_j0 requires finite arguments")
    return _kernels.j0_array(arr.ravel()).reshape(arr.shape)
