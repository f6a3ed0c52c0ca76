import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mertensbias.errors import LimitExceededError
from mertensbias.primes import (
    PrimeSumLedger,
    iter_prime_segments,
    prime_power_sums,
    prime_sums,
    sieve_segment,
    simple_sieve,
)


def is_prime_naive(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def naive_ledger(x: float):
    """Per-integer oracle for every ledger field, trial division only."""
    fx = int(math.floor(x))
    logp_p, inv_p, theta, psi, lam, neglog = [], [], [], [], [], []
    for n in range(2, fx + 1):
        spf = None
        for d in range(2, math.isqrt(n) + 1):
            if n % d == 0:
                spf = d
                break
        if spf is None:
            lg = math.log(n)
            logp_p.append(lg / n)
            inv_p.append(1.0 / n)
            theta.append(lg)
            psi.append(lg)
            lam.append(lg / n)
            neglog.append(-math.log1p(-1.0 / n))
        else:
            m = n
            while m % spf == 0:
                m //= spf
            if m == 1:  # proper prime power
                psi.append(math.log(spf))
                lam.append(math.log(spf) / n)
    return {
        "sum_logp_over_p": math.fsum(logp_p),
        "sum_recip_p": math.fsum(inv_p),
        "theta": math.fsum(theta),
        "psi": math.fsum(psi),
        "lambda_over_n": math.fsum(lam),
        "neg_log_product": math.fsum(neglog),
    }


def assert_ulps(a: float, b: float, ulps: int = 10):
    if a == b:
        return
    tol = ulps * math.ulp(max(abs(a), abs(b)))
    assert abs(a - b) <= tol, f"{a} vs {b} differ by {abs(a - b)} > {tol}"


class TestSieveSegment:
    def test_small_primes(self):
        assert sieve_segment(2, 12).primes.tolist() == [2, 3, 5, 7, 11]

    def test_window_90_100(self):
        assert sieve_segment(90, 100).primes.tolist() == [97]

    def test_million_window_count(self):
        seg = sieve_segment(10**6, 10**6 + 100)
        oracle = [n for n in range(10**6, 10**6 + 101) if is_prime_naive(n)]
        assert seg.primes.tolist() == oracle
        assert len(seg.primes) == 6

    def test_rejects_inverted_range(self):
        with pytest.raises(ValueError):
            sieve_segment(12, 2)
        with pytest.raises(ValueError):
            sieve_segment(5, 5)

    def test_rejects_limit_exceeded(self):
        with pytest.raises(LimitExceededError):
            sieve_segment(2, 10**9 + 1)

    @given(
        lo=st.integers(min_value=2, max_value=50_000),
        span=st.integers(min_value=1, max_value=300),
    )
    @settings(max_examples=40, deadline=None)
    def test_matches_naive_oracle(self, lo, span):
        seg = sieve_segment(lo, lo + span)
        oracle = [n for n in range(lo, lo + span + 1) if is_prime_naive(n)]
        assert seg.primes.tolist() == oracle

    def test_segments_cover_simple_sieve(self):
        limit = 100_000
        stream = np.concatenate(list(iter_prime_segments(limit, segment_size=2**12)))
        assert np.array_equal(stream, simple_sieve(limit))

    def test_segment_cache_roundtrip(self, tmp_path):
        cache = str(tmp_path / "sieve")
        a = np.concatenate(
            list(iter_prime_segments(30_000, segment_size=2**12, cache_dir=cache))
        )
        b = np.concatenate(
            list(iter_prime_segments(30_000, segment_size=2**12, cache_dir=cache))
        )
        assert np.array_equal(a, b)
        files = list((tmp_path / "sieve").glob("seg_*.sieve"))
        assert files
        blob = files[0].read_bytes()
        assert blob[:9] == b"MBLSIEVE1"
        lo = int.from_bytes(blob[9:17], "little")
        hi = int.from_bytes(blob[17:25], "little")
        assert 2 <= lo < hi


class TestPrimeSums:
    def test_hand_values_at_10(self):
        L = prime_sums(10)
        logs = {p: math.log(p) for p in (2, 3, 5, 7)}
        assert_ulps(L.sum_logp_over_p, sum(logs[p] / p for p in (2, 3, 5, 7)))
        assert_ulps(L.sum_recip_p, 1 / 2 + 1 / 3 + 1 / 5 + 1 / 7)
        assert_ulps(L.psi, 3 * logs[2] + 2 * logs[3] + logs[5] + logs[7])
        assert_ulps(
            L.lambda_over_n,
            math.fsum(
                [logs[2] / 2, logs[3] / 3, logs[2] / 4, logs[5] / 5, logs[7] / 7,
                 logs[2] / 8, logs[3] / 9]
            ),
        )
        assert_ulps(
            L.neg_log_product,
            math.fsum(-math.log1p(-1.0 / p) for p in (2, 3, 5, 7)),
        )
        assert L.theta == pytest.approx(sum(logs.values()), abs=1e-14)

    def test_empty_below_two(self):
        L = prime_sums(1)
        assert (
            L.sum_logp_over_p == L.sum_recip_p == L.psi == L.theta
            == L.lambda_over_n == L.neg_log_product == 0.0
        )

    def test_rejects_bad_x(self):
        with pytest.raises(ValueError):
            prime_sums(0.5)
        with pytest.raises(LimitExceededError):
            prime_sums(2e9)

    @pytest.mark.parametrize("x", [10, 97, 1000.5, 4096, 10**4 + 7])
    def test_against_naive_oracle(self, x):
        L = prime_sums(x)
        oracle = naive_ledger(x)
        for field, want in oracle.items():
            assert_ulps(getattr(L, field), want, ulps=10)

    @given(st.floats(min_value=1.0, max_value=5000.0), st.floats(min_value=0.0, max_value=5000.0))
    @settings(max_examples=25, deadline=None)
    def test_monotone_in_x(self, x, dx):
        a = prime_sums(x)
        b = prime_sums(x + dx)
        for f in (
            "sum_logp_over_p", "sum_recip_p", "psi", "theta",
            "lambda_over_n", "neg_log_product",
        ):
            assert getattr(b, f) >= getattr(a, f)

    def test_ledger_internal_orderings(self):
        L = prime_sums(50_000)
        assert L.psi >= L.theta >= 0
        assert L.neg_log_product >= L.sum_recip_p
        assert L.lambda_over_n >= L.sum_logp_over_p

    def test_psi_minus_theta_is_prime_power_part(self):
        x = 250_000
        L = prime_sums(x)
        pp = []
        for p in simple_sieve(math.isqrt(x)):
            pk = int(p) * int(p)
            while pk <= x:
                pp.append(math.log(p))
                pk *= int(p)
        assert L.psi - L.theta == pytest.approx(math.fsum(pp), rel=1e-12)

    def test_prime_power_sums_terminate_exactly(self):
        psi_pp, lam_pp = prime_power_sums(64)
        # squares 4,9,25,49; cubes 8,27; fourth 16; fifth 32; sixth 64
        want_psi = math.fsum(
            [math.log(2), math.log(3), math.log(5), math.log(7), math.log(2),
             math.log(3), math.log(2), math.log(2), math.log(2)]
        )
        assert psi_pp == pytest.approx(want_psi, rel=1e-14)
        want_lam = math.fsum(
            [math.log(2) / 4, math.log(3) / 9, math.log(5) / 25, math.log(7) / 49,
             math.log(2) / 8, math.log(3) / 27, math.log(2) / 16, math.log(2) / 32,
             math.log(2) / 64]
        )
        assert lam_pp == pytest.approx(want_lam, rel=1e-14)

    def test_segment_independence(self):
        x = 10**7
        single = prime_sums(x, segment_size=1 << 24)
        split = prime_sums(x, segment_size=1 << 16)
        for f in (
            "sum_logp_over_p", "sum_recip_p", "psi", "theta",
            "lambda_over_n", "neg_log_product",
        ):
            a, b = getattr(single, f), getattr(split, f)
            assert abs(a - b) <= 1e-12 * max(abs(a), 1.0), f

    @pytest.mark.slow
    def test_segment_independence_1e8(self):
        x = 10**8
        single = prime_sums(x, segment_size=1 << 26)
        split = prime_sums(x, segment_size=1 << 20)
        for f in ("sum_logp_over_p", "sum_recip_p", "neg_log_product"):
            a, b = getattr(single, f), getattr(split, f)
            assert abs(a - b) <= 1e-12 * max(abs(a), 1.0), f
