"""Limiting distribution of the normalized Mertens error and its bias.

The random model is Z = 1 - 2 Re sum_{g>0} X(g)/sqrt(1/4+g^2) with X(g)
independent and uniform on the unit circle; its transform E[e^{-itZ}] is
e^{-it} prod_g J0(2t/sqrt(1/4+g^2)). Zeros beyond the table are folded into
one Gaussian of matching variance (each far factor's second-order expansion).
P[Z > 0] comes from Gil-Pelaez inversion:

    P[Z > 0] = 1/2 + (1/pi) int_0^inf sin(t) R(t) / t dt,

with R(t) the real even product of the J0 factors and the Gaussian tail.
The convention e^{-itz} for the transform (rather than the bare e^{-it})
is fixed by checking against the Monte Carlo characteristic function.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from mertensbias import _kernels
from mertensbias.errors import QuadratureError
from mertensbias.zeros import TWO_PI, ZeroTable

DECAY_THRESHOLD = 1e-14
DEFAULT_STEP = 0.005
T_MAX_CAP = 400.0

_EMPTY_TABLE = ZeroTable(
    ordinates=np.empty(0, dtype=np.float64), max_height=0.0, count=0, source_digest=""
)


@dataclass(frozen=True)
class DistributionModel:
    table: ZeroTable
    tail_height: float
    tail_variance: float
    mean_shift: float
    orientation: str
    inv_scale: np.ndarray = field(repr=False)

    @property
    def zero_sum(self) -> float:
        """sum over table zeros of 1/(1/4 + g^2)."""
        return float(np.sum(self.inv_scale**2))


@dataclass(frozen=True)
class MonteCarloResult:
    samples: int
    seed: int
    mean: float
    variance: float
    min_value: float
    negative_fraction: float


def tail_variance_model(T: float) -> float:
    """2 * int_T^inf (1/g^2) (1/2pi) log(g/2pi) dg = (log(T/2pi)+1)/(pi T)."""
    if T <= TWO_PI:
        raise ValueError(f"tail height must exceed 2*pi, got {T}")
    return (math.log(T / TWO_PI) + 1.0) / (math.pi * T)


def build_model(
    table: ZeroTable | None,
    tail: str = "auto",
    orientation: str = "m1",
) -> DistributionModel:
    """Assemble the distribution model from a zero table and a tail policy.

    ``tail='auto'`` adds the Gaussian tail for zeros above the table height;
    ``tail='none'`` truncates there. Orientation only records which error
    term the model describes; both share one distribution since the circle
    variables are symmetric.
    """
    if orientation not in ("m1", "m2"):
        raise ValueError(f"orientation must be 'm1' or 'm2', got {orientation!r}")
    if tail not in ("auto", "none"):
        raise ValueError(f"tail must be 'auto' or 'none', got {tail!r}")
    if table is None:
        table = _EMPTY_TABLE
    g = table.ordinates
    inv_scale = 1.0 / np.sqrt(0.25 + g * g)
    if tail == "auto" and table.count > 0:
        tv = tail_variance_model(table.max_height)
    else:
        tv = 0.0
    return DistributionModel(
        table=table,
        tail_height=table.max_height,
        tail_variance=tv,
        mean_shift=1.0,
        orientation=orientation,
        inv_scale=inv_scale,
    )


def theoretical_variance(model: DistributionModel) -> float:
    """2 sum_{g<=T} 1/(1/4+g^2) + tail variance; complete model ~ 0.046192."""
    return 2.0 * model.zero_sum + model.tail_variance


def char_decay(model: DistributionModel, t_nodes: np.ndarray) -> np.ndarray:
    """R(t) = prod J0(2t/s_g) * exp(-t^2 sigma_tail^2/2) on given nodes."""
    return _kernels.char_function_values(
        model.inv_scale, np.asarray(t_nodes, dtype=np.float64), model.tail_variance
    )


def mu_hat(t, model: DistributionModel):
    """Transform E[e^{-itZ}] = e^{-it} R(t); modulus never exceeds 1."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    vals = np.exp(-1j * t_arr) * char_decay(model, np.abs(t_arr))
    if np.isscalar(t) or np.ndim(t) == 0:
        return complex(vals[0])
    return vals


def _quadrature_nodes(model: DistributionModel, step: float, t_max: float | None):
    """Uniform nodes [0, t_max] with R values; t_max found by decay if None.

    Extends in blocks until |R| stays below DECAY_THRESHOLD across a full
    block; raises QuadratureError at the cap.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if t_max is not None:
        n = int(math.ceil(t_max / step))
        n += n % 2  # even interval count for Simpson
        t = np.arange(n + 1) * step
        r = char_decay(model, t)
        if float(np.max(np.abs(r[-max(2, n // 10) :]))) > DECAY_THRESHOLD:
            raise QuadratureError(
                f"|R| above {DECAY_THRESHOLD} near t_max={t_max}; "
                "quadrature not converged (raise t_max or add tail variance)"
            )
        return t, r
    total_var = theoretical_variance(model)
    # Gaussian-envelope estimate of where |R| reaches the threshold, then
    # extend in short blocks until a whole block stays below it.
    block = max(4.0, 1.2 * math.sqrt(2.0 * 32.3 / max(total_var, 1e-12)))
    block = min(block, 64.0)
    ts = [np.array([0.0])]
    rs = [np.array([1.0])]
    t0 = 0.0
    while t0 < T_MAX_CAP:
        n = int(round(block / step))
        t = t0 + np.arange(1, n + 1) * step
        r = char_decay(model, t)
        ts.append(t)
        rs.append(r)
        t0 = float(t[-1])
        tail_n = max(2, int(round(4.0 / step)))
        if float(np.max(np.abs(r[-tail_n:]))) < DECAY_THRESHOLD:
            t_all = np.concatenate(ts)
            r_all = np.concatenate(rs)
            if t_all.shape[0] % 2 == 0:  # need odd node count
                t_all = t_all[:-1]
                r_all = r_all[:-1]
            return t_all, r_all
        block = 8.0
    raise QuadratureError(
        f"characteristic function has not decayed below {DECAY_THRESHOLD} "
        f"by t={T_MAX_CAP}; model variance too small for inversion"
    )


def _simpson(values: np.ndarray, step: float) -> float:
    n = values.shape[0]
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.sum(w * values) * step / 3.0)


def prob_positive(
    model: DistributionModel,
    step: float = DEFAULT_STEP,
    t_max: float | None = None,
    return_details: bool = False,
):
    """P[Z > 0] by Gil-Pelaez inversion, clamped to [0, 1].

    A zero-variance model is the point mass at +1, so the probability is 1
    without quadrature. ``return_details`` adds the quadrature span and a
    conservative convergence estimate (coarse-vs-fine Simpson difference).
    """
    if theoretical_variance(model) == 0.0:
        return (1.0, {"t_max": 0.0, "nodes": 1, "convergence_estimate": 0.0}) if return_details else 1.0
    t, r = _quadrature_nodes(model, step, t_max)
    integrand = np.empty_like(t)
    integrand[0] = 1.0  # sin(t)/t -> 1, R(0) = 1
    integrand[1:] = np.sin(t[1:]) * r[1:] / t[1:]
    value = 0.5 + _simpson(integrand, step) / math.pi
    coarse = 0.5 + _simpson(integrand[::2], 2.0 * step) / math.pi
    clamped = min(max(value, 0.0), 1.0)
    if return_details:
        return clamped, {
            "t_max": float(t[-1]),
            "nodes": int(t.shape[0]),
            "convergence_estimate": abs(value - coarse),
        }
    return clamped


def density_grid(
    model: DistributionModel,
    z_range: tuple[float, float] = (-1.0, 3.0),
    points: int = 1601,
    step: float = DEFAULT_STEP,
    t_max: float | None = None,
):
    """Density of Z on a uniform grid by Fourier inversion.

    f(z) = (1/pi) int_0^inf cos(t (1 - z)) R(t) dt; returns (z, f) arrays.
    """
    if points < 3:
        raise ValueError("points must be >= 3")
    if theoretical_variance(model) == 0.0:
        raise QuadratureError("point-mass model has no density")
    t, r = _quadrature_nodes(model, step, t_max)
    z = np.linspace(z_range[0], z_range[1], int(points))
    w = np.ones_like(t)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    wr = w * r * (step / 3.0)
    # f_j = (1/pi) sum_i wr_i cos(t_i (1 - z_j)), chunked over z
    f = np.empty_like(z)
    chunk = max(1, int(4_000_000 // t.shape[0]))
    for j0 in range(0, z.shape[0], chunk):
        zz = z[j0 : j0 + chunk]
        f[j0 : j0 + chunk] = (wr[None, :] * np.cos(np.outer(1.0 - zz, t))).sum(axis=1)
    f /= math.pi
    return z, f


def draw_samples(model: DistributionModel, n: int, seed: int) -> np.ndarray:
    """n Monte Carlo realizations of Z, deterministic in (seed, backend).

    Angles come from the SplitMix64 counter stream (documented in the kernel
    module); the tail term is one Box-Muller Gaussian of the tail variance.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return _kernels.sample_z_values(
        model.inv_scale, math.sqrt(model.tail_variance), int(n), int(seed) & 0xFFFFFFFFFFFFFFFF
    )


def sample_z(model: DistributionModel, n: int, seed: int) -> MonteCarloResult:
    """Summary statistics of n Monte Carlo draws of Z."""
    values = draw_samples(model, n, seed)
    return MonteCarloResult(
        samples=int(n),
        seed=int(seed),
        mean=float(np.mean(values)),
        variance=float(np.var(values)),
        min_value=float(np.min(values)),
        negative_fraction=float(np.mean(values < 0.0)),
    )
