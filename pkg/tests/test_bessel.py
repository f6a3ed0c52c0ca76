import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from mertensbias.bessel import bessel_j0


def series_oracle(t: float, terms: int = 60) -> float:
    """Direct power-series evaluation with exact rational-ish accumulation."""
    acc = 0.0
    term = 1.0
    for k in range(terms):
        acc += term
        term *= -(t * t) / (4.0 * (k + 1) ** 2)
    return acc


def test_at_zero():
    assert bessel_j0(0.0) == 1.0


def test_at_two_matches_series_oracle():
    assert bessel_j0(2.0) == pytest.approx(0.2238907791412356, abs=1e-13)
    assert bessel_j0(2.0) == pytest.approx(series_oracle(2.0), abs=1e-15)


def test_first_bessel_zero():
    assert abs(bessel_j0(2.4048255577)) < 1e-9


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        bessel_j0(math.nan)
    with pytest.raises(ValueError):
        bessel_j0(math.inf)
    with pytest.raises(ValueError):
        bessel_j0(np.array([1.0, math.inf]))


def test_array_shape_preserved():
    x = np.linspace(0, 5, 12).reshape(3, 4)
    out = bessel_j0(x)
    assert out.shape == (3, 4)
    assert out[0, 0] == 1.0


@given(st.floats(min_value=-10000.0, max_value=10000.0))
@settings(max_examples=300, deadline=None)
def test_bounded_by_one(t):
    assert abs(bessel_j0(t)) <= 1.0 + 1e-12


def test_against_scipy_small_arguments():
    x = np.linspace(0.0, 30.0, 30001)
    err = np.abs(bessel_j0(x) - scipy.special.j0(x))
    assert err.max() < 5e-12


def test_against_scipy_large_arguments():
    x = np.linspace(30.0, 10000.0, 40001)
    mine = bessel_j0(x)
    ref = scipy.special.j0(x)
    err = np.abs(mine - ref)
    assert err.max() < 1e-13
    big = np.abs(ref) > 1e-2
    assert (err[big] / np.abs(ref[big])).max() < 1e-11


def test_even_function():
    x = np.linspace(0.1, 50, 500)
    assert np.array_equal(bessel_j0(x), bessel_j0(-x))
