"""Truncated zeta-zero explicit formulas for the normalized Mertens errors.

For sqrt(x)*M1(x) the truncated formula is

    1 - 2 sum_{0<g<=T} [(-1/2) cos(g log x) + g sin(g log x)] / (1/4 + g^2)

and the sqrt(x)*log(x)*M2(x) analogue carries the opposite sign on the zero
sum. The error budget sqrt(x) log^2(xT)/T + 1/log x tracks the truncation;
its implied constant is calibrated once against the sieve and frozen in the
test suite. Zero terms are summed ascending with compensated accumulation,
with the phase g*log x reduced mod 2*pi in double-double arithmetic.
"""

import math
import statistics
from dataclasses import dataclass

import numpy as np

from mertensbias import _kernels
from mertensbias.constants import MertensConstants
from mertensbias.mertens import evaluate_many
from mertensbias.zeros import ZeroTable


@dataclass(frozen=True)
class ExplicitEvaluation:
    x: float
    truncation_T: float
    value: float
    zero_terms_used: int
    error_budget: float


def _check_args(x: float, T: float, table: ZeroTable):
    if x < 5.0:
        raise ValueError(f"x must be >= 5, got {x}")
    if T < 5.0:
        raise ValueError(f"T must be >= 5, got {T}")
    if T > table.max_height:
        raise ValueError(
            f"T={T} exceeds table height {table.max_height}; supply more zeros"
        )


def error_budget(x: float, T: float) -> float:
    """sqrt(x) log^2(xT)/T + 1/log x."""
    return math.sqrt(x) * math.log(x * T) ** 2 / T + 1.0 / math.log(x)


def _zero_sums(table: ZeroTable, y: float, T: float):
    gammas = table.ordinates[table.ordinates <= T]
    s_e14, s_sine = _kernels.zero_phase_sums(gammas, y)
    return s_e14, s_sine, int(gammas.shape[0])


def explicit_script_e(x: float, T: float, table: ZeroTable) -> ExplicitEvaluation:
    """Truncated explicit formula for sqrt(x) * M1(x)."""
    x = float(x)
    T = float(T)
    _check_args(x, T, table)
    s_e14, _, used = _zero_sums(table, math.log(x), T)
    return ExplicitEvaluation(
        x=x,
        truncation_T=T,
        value=1.0 - 2.0 * s_e14,
        zero_terms_used=used,
        error_budget=error_budget(x, T),
    )


def explicit_m2(
    x: float, T: float, table: ZeroTable, constants: MertensConstants | None = None
) -> ExplicitEvaluation:
    """Truncated explicit formula for sqrt(x) * log(x) * M2(x).

    Identical zero sum with opposite sign; ``constants`` only anchors which
    sieve normalization the value targets and is not used numerically.
    """
    x = float(x)
    T = float(T)
    _check_args(x, T, table)
    s_e14, _, used = _zero_sums(table, math.log(x), T)
    return ExplicitEvaluation(
        x=x,
        truncation_T=T,
        value=1.0 + 2.0 * s_e14,
        zero_terms_used=used,
        error_budget=error_budget(x, T),
    )


def sine_sum(y: float, T: float, table: ZeroTable) -> float:
    """-2 sum_{0<g<=T} sin(g y) / g."""
    T = float(T)
    if T < 5.0:
        raise ValueError(f"T must be >= 5, got {T}")
    if T > table.max_height:
        raise ValueError(f"T={T} exceeds table height {table.max_height}")
    _, s_sine, _ = _zero_sums(table, float(y), T)
    return -2.0 * s_sine


def compare(
    xs,
    Ts,
    table: ZeroTable,
    constants: MertensConstants,
) -> dict:
    """Residual matrix |explicit - sieve| over an (x, T) grid, both forms.

    Reports per-cell residuals, error budgets and their ratios, the median
    residual per T, and whether those medians are non-increasing in T.
    """
    xs = [float(x) for x in xs]
    Ts = sorted(float(T) for T in Ts)
    if not xs or not Ts:
        raise ValueError("xs and Ts must be non-empty")
    samples = evaluate_many(xs, constants)
    rows = []
    for x, s in zip(xs, samples):
        for T in Ts:
            ev1 = explicit_script_e(x, T, table)
            ev2 = explicit_m2(x, T, table, constants)
            res1 = abs(ev1.value - s.script_e)
            res2 = abs(ev2.value - s.script_e2)
            rows.append(
                {
                    "x": x,
                    "T": T,
                    "explicit_m1": ev1.value,
                    "sieve_m1": s.script_e,
                    "residual_m1": res1,
                    "explicit_m2": ev2.value,
                    "sieve_m2": s.script_e2,
                    "residual_m2": res2,
                    "budget": ev1.error_budget,
                    "ratio_m1": res1 / ev1.error_budget,
                    "ratio_m2": res2 / ev2.error_budget,
                }
            )
    medians_m1 = {}
    medians_m2 = {}
    for T in Ts:
        sub = [r for r in rows if r["T"] == T]
        medians_m1[T] = statistics.median(r["residual_m1"] for r in sub)
        medians_m2[T] = statistics.median(r["residual_m2"] for r in sub)
    med_list = [medians_m1[T] for T in Ts]
    monotone = all(b <= a * (1.0 + 1e-12) for a, b in zip(med_list, med_list[1:]))
    return {
        "rows": rows,
        "Ts": Ts,
        "xs": xs,
        "median_residual_m1": medians_m1,
        "median_residual_m2": medians_m2,
        "median_nonincreasing_in_T": monotone,
        "max_ratio": max(max(r["ratio_m1"], r["ratio_m2"]) for r in rows),
    }
