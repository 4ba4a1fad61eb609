import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rank3kit.errors import CapacityError
from rank3kit.numtheory import (as_prime_power, divisors, factorize, is_prime, is_primitive_prime_divisor,
                                multiplicative_order, p_part, phi_orbit_congruence,
                                phi_orbit_congruence_bruteforce, prime_power, primitive_prime_divisors)

PRIMES = [2, 3, 5, 7]


@given(st.integers(1, 10**6))
def test_factorize_reconstructs(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac.items()) == n
    assert all(is_prime(p) for p in fac)


@given(st.integers(1, 5000))
def test_divisors(n):
    assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]


@given(st.integers(1, 10**5), st.sampled_from(PRIMES))
def test_p_part(n, p):
    pp = p_part(n, p)
    assert n % pp == 0 and (n // pp) % p != 0


def test_prime_power_overflow_guard():
    with pytest.raises(CapacityError):
        prime_power(2, 100, cap=2**40)
    assert as_prime_power(9) == (3, 2)
    assert as_prime_power(12) is None


@given(st.sampled_from(PRIMES), st.integers(1, 8))
def test_ppd_matches_definition(p, f):
    n = p**f - 1
    # candidates from a plain divisor scan, independent of factorize
    expected = {r for r in divisors(n) if is_prime(r)
                and all((p**m - 1) % r for m in range(1, f))}
    assert primitive_prime_divisors(p, f) == expected


def test_known_ppds():
    assert is_primitive_prime_divisor(3, 2, 2)
    assert not is_primitive_prime_divisor(3, 2, 4)
    assert primitive_prime_divisors(2, 6) == set()  # Zsigmondy exception
    assert primitive_prime_divisors(2, 1) == set()


@given(st.integers(1, 50), st.integers(2, 60))
def test_multiplicative_order(a, m):
    if math.gcd(a, m) != 1:
        with pytest.raises(ValueError):
            multiplicative_order(a, m)
        return
    k = multiplicative_order(a, m)
    assert pow(a, k, m) == 1 % m
    assert all(pow(a, j, m) != 1 % m for j in range(1, k))


@st.composite
def congruence_args(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    f = draw(st.integers(1, 3))
    q = p**f
    r = draw(st.sampled_from(divisors(q - 1)))
    t = draw(st.integers(0, f - 1))
    return draw(st.integers(0, 30)), draw(st.integers(0, 30)), t, p, f, r


@given(congruence_args())
def test_congruence_shortcut_matches_bruteforce(args):
    assert phi_orbit_congruence(*args) == phi_orbit_congruence_bruteforce(*args)
