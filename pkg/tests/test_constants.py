import math

import pytest

from mertensbias.constants import compute_constants, euler_constant
from mertensbias.primes import simple_sieve


def euler_maclaurin_oracle(n: int = 400) -> float:
    """Independent slow evaluation of Euler's constant."""
    h = math.fsum(1.0 / k for k in range(1, n + 1))
    n2 = float(n) ** 2
    return (
        h - math.log(n) - 1 / (2 * n) + 1 / (12 * n2) - 1 / (120 * n2**2)
        + 1 / (252 * n2**3)
    )


def test_euler_constant_twelve_decimals():
    assert euler_constant() == pytest.approx(0.577215664902, abs=5e-13)
    assert euler_constant() == pytest.approx(euler_maclaurin_oracle(), abs=1e-15)


def test_digamma_three_halves_identity():
    # Gamma'/Gamma(3/2) = -C0 - 2 log 2 + 2
    c0 = euler_constant()
    assert -c0 - 2 * math.log(2) + 2 == pytest.approx(0.0364899740, abs=1e-9)


def test_log_four_pi_identity():
    c0 = euler_constant()
    assert -c0 - 2 + math.log(4 * math.pi) == pytest.approx(-0.0461914179, abs=1e-9)


def test_rejects_small_limit():
    with pytest.raises(ValueError):
        compute_constants(50)


class TestComputeConstants:
    def test_paper_printed_digits(self, constants_1m):
        # printed digits are truncations: E = -1.332..., B = 0.261...
        assert str(constants_1m.e_const)[:6] == "-1.332"
        assert str(constants_1m.b_const)[:5] == "0.261"

    def test_reference_values_within_tail_bound(self, constants_1m):
        e_ref = -1.3325822757332208
        b_ref = 0.2614972128476428
        assert abs(constants_1m.e_const - e_ref) <= constants_1m.tail_bound
        assert abs(constants_1m.b_const - b_ref) <= constants_1m.tail_bound

    def test_tail_bound_below_target(self, constants_1m):
        assert 0 < constants_1m.tail_bound < 1e-6

    def test_sign_invariants(self, constants_1m):
        c = constants_1m
        assert c.e_const < 0 < c.b_const
        assert c.e_const + c.c0 < 0
        assert c.b_const < c.c0

    def test_certified_bound_consistency(self):
        prev = None
        for P in (10**4, 10**5, 10**6):
            cur = compute_constants(P)
            if prev is not None:
                assert abs(cur.e_const - prev.e_const) <= prev.tail_bound
                assert abs(cur.b_const - prev.b_const) <= prev.tail_bound
                assert cur.tail_bound < prev.tail_bound
            prev = cur

    def test_raw_sums_strictly_increase(self):
        a = compute_constants(10**4)
        b = compute_constants(10**5)
        c = compute_constants(10**6)
        assert 0 < a.e_prime_sum < b.e_prime_sum < c.e_prime_sum
        assert 0 < a.b_prime_sum < b.b_prime_sum < c.b_prime_sum

    def test_prime_sum_reconstruction(self):
        # raw E sum equals the double sum over k >= 2 by direct enumeration
        P = 2000
        c = compute_constants(P)
        total = []
        for p in simple_sieve(P):
            p = int(p)
            k = 2
            term = math.log(p) / p**2
            while term > 1e-22:
                total.append(term)
                k += 1
                term = math.log(p) / p**k
        assert c.e_prime_sum == pytest.approx(math.fsum(total), abs=1e-12)
