"""Small-integer arithmetic: primes, p-parts, primitive prime divisors.

Sizes here are tiny, so primality and factoring use trial division.
Prime powers are capped at 2**40 and checked before use.
"""

from __future__ import annotations

from math import gcd

from rank3kit.errors import CapacityError

POWER_CAP = 2**40
INT64_MAX = 2**63 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict:
    """Prime factorization {p: e} by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list:
    return sorted(factorize(n))


def prime_power(p: int, f: int, cap: int = INT64_MAX) -> int:
    """p**f with an explicit overflow check."""
    if f < 0:
        raise ValueError("negative exponent")
    result = 1
    for _ in range(f):
        result *= p
        if result > cap:
            raise CapacityError("power_cap", cap, f"{p}^{f}")
    return result


def as_prime_power(q: int):
    """(p, f) with q = p**f, or None."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    (p, f), = fac.items()
    return p, f


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    if n < 1:
        raise ValueError("p_part expects n >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _check_ppd_args(p, f):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if f < 1:
        raise ValueError("exponent must be at least 1")
    prime_power(p, f)  # overflow guard


def is_primitive_prime_divisor(r: int, p: int, f: int) -> bool:
    """r divides p^f - 1 but no p^m - 1 with 1 <= m < f."""
    _check_ppd_args(p, f)
    if not is_prime(r):
        raise ValueError(f"{r} is not prime")
    if (prime_power(p, f) - 1) % r:
        return False
    return all((prime_power(p, m) - 1) % r for m in range(1, f))


def primitive_prime_divisors(p: int, f: int) -> set:
    _check_ppd_args(p, f)
    n = prime_power(p, f) - 1
    if n == 0:
        return set()
    return {r for r in prime_factors(n) if is_primitive_prime_divisor(r, p, f)}


def multiplicative_order(a: int, m: int) -> int:
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def phi_orbit_congruence(ell: int, k: int, t: int, p: int, f: int, r: int) -> bool:
    """Is there an integer s with k = ell * p^t + s * r (mod q - 1)?

    Since r divides q - 1 this holds exactly when k = ell * p^t (mod r).
    """
    q = prime_power(p, f, POWER_CAP)
    if (q - 1) % r:
        raise ValueError(f"r={r} does not divide q-1={q - 1}")
    if not (0 <= t < f):
        raise ValueError("t must satisfy 0 <= t < f")
    return (k - ell * pow(p, t)) % r == 0


def phi_orbit_congruence_bruteforce(ell, k, t, p, f, r):
    """Direct search over s in range(q - 1); reference for the shortcut."""
    q = prime_power(p, f, POWER_CAP)
    return any((k - ell * p**t - s * r) % (q - 1) == 0 for s in range(q - 1))


def divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
