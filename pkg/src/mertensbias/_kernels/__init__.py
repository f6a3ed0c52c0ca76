"""Backend selection for the hot numeric kernels.

Two interchangeable implementations exist:

* ``numba_impl`` -- @njit-compiled loops (default when numba imports cleanly)
* ``numpy_impl`` -- vectorized pure-numpy fallback

Selection is controlled by the ``MERTENSBIAS_BACKEND`` environment variable
(``numba`` or ``numpy``). Unset, numba is tried first and numpy is used if
numba is unavailable. The two backends agree to floating-point roundoff but
are not guaranteed bit-identical to each other; each backend on its own is
deterministic for identical inputs.
"""

import os

_requested = os.environ.get("MERTENSBIAS_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"MERTENSBIAS_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

if _requested == "numpy":
    from mertensbias._kernels import numpy_impl as _impl

    BACKEND = "numpy"
elif _requested == "numba":
    from mertensbias._kernels import numba_impl as _impl

    BACKEND = "numba"
else:
    try:
        from mertensbias._kernels import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        from mertensbias._kernels import numpy_impl as _impl

        BACKEND = "numpy"

mark_composites = _impl.mark_composites
ledger_partials = _impl.ledger_partials
positivity_pass = _impl.positivity_pass
density_pass = _impl.density_pass
zero_phase_sums = _impl.zero_phase_sums
j0_array = _impl.j0_array
char_function_values = _impl.char_function_values
sample_z_values = _impl.sample_z_values

__all__ = [
    "BACKEND",
    "mark_composites",
    "ledger_partials",
    "positivity_pass",
    "density_pass",
    "zero_phase_sums",
    "j0_array",
    "char_function_values",
    "sample_z_values",
]
