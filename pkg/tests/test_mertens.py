import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mertensbias.mertens import (
    empirical_log_density,
    error_statistics,
    evaluate,
    evaluate_many,
    lambda_values,
    residuals,
    scan,
    verify_positivity,
)
from mertensbias.primes import prime_sums, simple_sieve


class TestEvaluate:
    def test_hand_value_at_2(self, constants_1m):
        s = evaluate(2.0, constants_1m)
        want_m1 = math.log(2) / 2 - math.log(2) - constants_1m.e_const
        want_m2 = 0.5 - math.log(math.log(2)) - constants_1m.b_const
        assert s.m1 == pytest.approx(want_m1, abs=1e-14)
        assert s.m1 == pytest.approx(0.98601, abs=1e-4)
        assert s.m2 == pytest.approx(want_m2, abs=1e-14)
        assert s.m2 == pytest.approx(0.60502, abs=1e-4)

    def test_hand_value_at_10(self, constants_1m):
        s = evaluate(10.0, constants_1m)
        assert s.m1 == pytest.approx(0.34265, abs=1e-4)
        assert s.script_e == pytest.approx(1.0836, abs=1e-3)
        assert s.m2 == pytest.approx(0.08066, abs=1e-4)

    def test_rejects_x_at_or_below_one(self, constants_1m):
        for bad in (1.0, 0.3, -2.0):
            with pytest.raises(ValueError):
                evaluate(bad, constants_1m)

    @given(st.floats(min_value=1.0001, max_value=10000.0))
    @settings(max_examples=30, deadline=None)
    def test_script_e_definition(self, constants_1m, x):
        s = evaluate(x, constants_1m)
        assert s.script_e == math.sqrt(x) * s.m1
        assert s.script_e2 == math.sqrt(x) * math.log(x) * s.m2
        assert s.script_e**2 / x == pytest.approx(s.m1**2, rel=1e-12)

    @given(
        st.floats(min_value=2.0, max_value=50000.0),
        st.floats(min_value=1e-8, max_value=0.9),
    )
    @settings(max_examples=30, deadline=None)
    def test_inter_prime_exactness(self, constants_1m, x, frac):
        # x and x' in the same inter-prime interval differ only in the log terms
        fx = math.floor(x)
        primes = simple_sieve(int(fx) + 100)
        nxt = float(primes[np.searchsorted(primes, fx, side="right")])
        x2 = x + frac * (nxt - x)
        if math.floor(x2) != fx or x2 <= x:
            return
        a = evaluate(x, constants_1m)
        b = evaluate(x2, constants_1m)
        assert b.m1 - a.m1 == pytest.approx(-(math.log(x2) - math.log(x)), abs=1e-12)
        assert b.m2 - a.m2 == pytest.approx(
            -(math.log(math.log(x2)) - math.log(math.log(x))), abs=1e-12
        )

    def test_evaluate_many_matches_single(self, constants_1m):
        xs = [2.5, 10.0, 97.0, 1234.5, 99991.0, 4.0]
        many = evaluate_many(xs, constants_1m)
        for x, s in zip(xs, many):
            single = evaluate(x, constants_1m)
            assert s.m1 == pytest.approx(single.m1, abs=1e-12)
            assert s.m2 == pytest.approx(single.m2, abs=1e-12)


class TestVerifyPositivity:
    def test_limit_10_matches_direct_enumeration(self, constants_1m):
        rep = verify_positivity(10, constants_1m)
        # infima at the left-limits of 3, 5, 7 plus the closing point x=10
        cands_m1 = []
        cands_m2 = []
        for q, below in ((3, [2]), (5, [2, 3]), (7, [2, 3, 5])):
            s1 = math.fsum(math.log(p) / p for p in below)
            s2 = math.fsum(1.0 / p for p in below)
            cands_m1.append(s1 - math.log(q) - constants_1m.e_const)
            cands_m2.append(s2 - math.log(math.log(q)) - constants_1m.b_const)
        end = evaluate(10.0, constants_1m)
        cands_m1.append(end.m1)
        cands_m2.append(end.m2)
        assert rep.min_m1 == pytest.approx(min(cands_m1), abs=1e-12)
        assert rep.min_m2 == pytest.approx(min(cands_m2), abs=1e-12)
        assert rep.intervals_checked == 4
        assert rep.verified

    def test_million_verified(self, constants_1m):
        rep = verify_positivity(10**6, constants_1m)
        assert rep.verified
        assert rep.min_m1 > 0 and rep.min_m2 > 0
        assert 1 < rep.argmin_m1 <= 10**6
        assert 1 < rep.argmin_m2 <= 10**6

    def test_rejects_small_limit(self, constants_1m):
        with pytest.raises(ValueError):
            verify_positivity(5, constants_1m)

    def test_minimum_attained_at_left_limit(self, constants_1m):
        # the reported minimum must match a direct evaluation just below argmin
        rep = verify_positivity(10**4, constants_1m)
        eps = 1e-9
        s = evaluate(rep.argmin_m1 - eps, constants_1m)
        assert s.m1 == pytest.approx(rep.min_m1, abs=1e-6)


class TestScan:
    def test_no_sign_changes_small_range(self, constants_1m):
        samples, changes = scan(2, 10**4, 10, constants_1m)
        assert len(samples) == 10
        assert all(s.m1 > 0 and s.m2 > 0 for s in samples)
        assert changes == {"m1": 0, "m2": 0, "script_e": 0}

    def test_no_sign_changes_to_1e6(self, constants_1m):
        samples, changes = scan(2, 10**6, 100, constants_1m)
        assert changes["m1"] == 0

    def test_degenerate_two_point_grid(self, constants_1m):
        samples, changes = scan(2, 2.0000001, 2, constants_1m)
        assert len(samples) == 2
        assert changes == {"m1": 0, "m2": 0, "script_e": 0}

    def test_grid_endpoints_exact(self, constants_1m):
        samples, _ = scan(3.5, 777.0, 5, constants_1m)
        assert samples[0].x == 3.5
        assert samples[-1].x == 777.0

    def test_rejects_bad_grid(self, constants_1m):
        with pytest.raises(ValueError):
            scan(10, 2, 5, constants_1m)
        with pytest.raises(ValueError):
            scan(2, 10, 1, constants_1m)


class TestResiduals:
    @pytest.mark.parametrize("x", [10**3, 10**4])
    def test_lemma_bounds(self, constants_1m, x):
        r = residuals(float(x), constants_1m)
        assert abs(r["lemma31"]) <= 5.0 / math.sqrt(x)
        assert abs(r["lemma51"]) <= 10.0 / x

    def test_loose_sanity_at_100(self, constants_1m):
        r = residuals(100.0, constants_1m)
        assert abs(r["lemma51"]) < 0.1

    def test_lemma41_tracks_lemma31(self, constants_1m):
        # both estimate M1 against psi-driven main terms; they agree closely
        r = residuals(10**4, constants_1m)
        assert abs(r["lemma41"] - r["lemma31"]) < 10 * abs(r["lemma31"])
        assert r["lemma41_tail_estimate"] > 0

    def test_residual_decay_along_grid(self, constants_1m):
        vals = [abs(residuals(float(x), constants_1m)["lemma31"]) for x in (100, 10**3, 10**4)]
        assert vals[0] > vals[1] > vals[2]

    def test_rejects_small_x_or_cutoff(self, constants_1m):
        with pytest.raises(ValueError):
            residuals(50.0, constants_1m)
        with pytest.raises(ValueError):
            residuals(1000.0, constants_1m, x_max_factor=10)


class TestErrorStatistics:
    def test_tiny_hand_sum(self):
        # psi at integers 2..10 via the nine-term direct sum
        st_out = error_statistics(10.0)
        lam = lambda_values(2, 10)
        psi = np.cumsum(lam)
        t = np.arange(2, 11, dtype=float)
        want = float(np.sum(np.abs(psi - t) / np.sqrt(t))) / 10.0
        assert st_out["cramer_avg"] == pytest.approx(want, rel=1e-12)
        want_dyadic = float(np.sum(np.abs(psi[8:] - t[8:])))  # t from 10 to 20 capped at table
        assert st_out["dyadic_integral"] >= 0

    def test_moderate_range(self):
        st_out = error_statistics(10**4)
        assert st_out["cramer_avg"] < 1.0
        assert st_out["dyadic_ratio"] < 1.0

    def test_lambda_values_oracle(self):
        lam = lambda_values(2, 32)
        for n in range(2, 33):
            m = n - 2
            spf = None
            for d in range(2, n + 1):
                if n % d == 0:
                    spf = d
                    break
            q = n
            while q % spf == 0:
                q //= spf
            want = math.log(spf) if q == 1 else 0.0
            assert lam[m] == pytest.approx(want, abs=1e-15)


class TestEmpiricalLogDensity:
    def test_full_density_at_1e6(self, constants_1m):
        for which in ("w1", "w2"):
            rep = empirical_log_density(which, 10**6, constants_1m)
            assert rep.lower_density == pytest.approx(1.0, abs=1e-9)
            assert rep.upper_density == pytest.approx(1.0, abs=1e-9)

    def test_small_window(self, constants_1m):
        rep = empirical_log_density("w1", 10.0, constants_1m)
        assert rep.lower_density == pytest.approx(1.0, abs=1e-12)

    def test_bounds_and_ordering(self, constants_1m):
        rep = empirical_log_density("w2", 5000.0, constants_1m)
        assert 0.0 <= rep.lower_density <= rep.upper_density <= 1.0

    def test_rejects_unknown_set(self, constants_1m):
        with pytest.raises(ValueError):
            empirical_log_density("w3", 100.0, constants_1m)

    def test_crossing_accounting_with_shifted_constant(self, constants_1m):
        # an inflated E forces M1 < 0 on part of the range; the density must
        # equal the measure of {t < t*} computed directly
        import dataclasses

        shifted = dataclasses.replace(constants_1m, e_const=constants_1m.e_const + 0.5)
        rep = empirical_log_density("w1", 10**4, shifted)
        # brute force on a fine grid of inter-prime evaluation
        xs = np.exp(np.linspace(math.log(2.0), math.log(10**4), 20001))
        samples = evaluate_many(xs.tolist(), shifted)
        mask = np.array([s.m1 > 0 for s in samples])
        measured = np.trapezoid(mask.astype(float), np.log(xs)) / (
            math.log(10**4) - math.log(2.0)
        )
        assert rep.lower_density == pytest.approx(measured, abs=5e-3)
