"""Finite fields GF(p^f) with elements encoded as integers.

The element sum(a_i * p**i) stands for the polynomial sum(a_i * x**i) modulo
the defining polynomial. The defining polynomial is the monic irreducible of
degree f whose lower coefficients, read as base-p digits, give the smallest
integer; the primitive element is the smallest integer of order q - 1. Both
choices only exist to make point numbering reproducible.

Multiplication goes through log/exp tables, addition digit-wise.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from rank3kit.errors import CapacityError
from rank3kit.numtheory import factorize, is_prime

FIELD_SIZE_CAP = 2**20


def _digits(x, p, f):
    out = []
    for _ in range(f):
        out.append(x % p)
        x //= p
    return out


def _polymulmod(a, b, mod, p):
    """Multiply coefficient lists (low first) modulo a monic ``mod``."""
    f = len(mod) - 1
    prod = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for i in range(f + 1):
                prod[k - f + i] = (prod[k - f + i] - c * mod[i]) % p
    return prod[:f]


def _has_root_free_factorization(mod, p):
    """Irreducibility by brute force: no monic factor of degree <= f/2."""
    f = len(mod) - 1
    for deg in range(1, f // 2 + 1):
        for enc in range(p**deg):
            cand = _digits(enc, p, deg) + [1]
            if _poly_divides(cand, mod, p):
                return False
    return True


def _poly_divides(a, b, p):
    """Does monic a divide b over F_p?"""
    b = list(b)
    da = len(a) - 1
    for k in range(len(b) - 1, da - 1, -1):
        c = b[k]
        if c:
            for i in range(da + 1):
                b[k - da + i] = (b[k - da + i] - c * a[i]) % p
    return not any(b[:da])


def least_irreducible(p, f):
    if f == 1:
        return [0, 1]
    for enc in range(p**f):
        mod = _digits(enc, p, f) + [1]
        if mod[0] == 0:
            continue
        if _has_root_free_factorization(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    def __init__(self, p, f=1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1:
            raise ValueError("degree must be positive")
        q = p**f
        if q > FIELD_SIZE_CAP:
            raise CapacityError("field_size", FIELD_SIZE_CAP, f"q = {q}")
        self.p, self.f, self.q = p, f, q
        self.modulus = least_irreducible(p, f)
        self.digits = np.array([_digits(x, p, f) for x in range(q)], dtype=np.int64)
        self.place = p ** np.arange(f, dtype=np.int64)
        self.primitive = None
        self.exp = None
        for cand in range(2 if q > 2 else 1, q):
            table = self._power_table(cand)
            if table is not None:
                self.primitive, self.exp = cand, table
                break
        if self.exp is None:
            raise AssertionError("no primitive element")
        self.log = np.full(q, -1, dtype=np.int64)
        self.log[self.exp] = np.arange(q - 1)
        ar = np.arange(q)
        self.neg_table = self.from_digits((-self.digits) % p)
        self.frob_table = self.pow_array(ar, p)

    def _power_table(self, g):
        """Powers g^0..g^(q-2) if g has order q - 1, else None."""
        q = self.q
        out = np.empty(q - 1, dtype=np.int64)
        x = [1] + [0] * (self.f - 1)
        gd = _digits(g, self.p, self.f)
        for k in range(q - 1):
            val = int(sum(c * self.p**i for i, c in enumerate(x)))
            if k > 0 and val == 1:
                return None
            out[k] = val
            x = _polymulmod(x, gd, self.modulus, self.p) if self.f > 1 else [x[0] * g % self.p]
        return out

    def __repr__(self):
        return f"GF({self.p}^{self.f})"

    @property
    def order(self):
        return self.q

    # vectorized arithmetic on integer arrays

    def from_digits(self, dig):
        return np.asarray(dig, dtype=np.int64) @ self.place

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.from_digits((self.digits[a] + self.digits[b]) % self.p)

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def neg(self, a):
        return self.neg_table[a]

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, res)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def pow_array(self, a, k):
        a = np.asarray(a, dtype=np.int64)
        res = self.exp[(self.log[a] * k) % (self.q - 1)]
        if k == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, res)

    def frob(self, a, j=1):
        a = np.asarray(a, dtype=np.int64)
        for _ in range(j % self.f):
            a = self.frob_table[a]
        return a

    def power_of_primitive(self, k):
        return int(self.exp[k % (self.q - 1)])

    def element_order(self, a):
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        from math import gcd

        return (self.q - 1) // gcd(int(self.log[a]), self.q - 1)

    def prime_field_basis(self):
        """The basis 1, x, ..., x^(f-1) of F_q over F_p, as integers."""
        return [self.p**i for i in range(self.f)]

    # vectors: index sum a_i q^(d-1-i), first coordinate most significant

    def vector_table(self, d):
        if self.q**d > 10**6:
            raise CapacityError("vector_count", 10**6, f"q^d = {self.q ** d}")
        idx = np.arange(self.q**d)
        cols = [(idx // self.q ** (d - 1 - i)) % self.q for i in range(d)]
        return np.stack(cols, axis=1)

    def vector_index(self, V):
        V = np.asarray(V, dtype=np.int64)
        d = V.shape[-1]
        weights = self.q ** np.arange(d - 1, -1, -1, dtype=np.int64)
        return V @ weights

    def vec_times_matrix(self, V, M):
        """Row vectors V (N x d) times matrix M (d x d)."""
        V = np.asarray(V, dtype=np.int64)
        M = np.asarray(M, dtype=np.int64)
        N, d = V.shape
        out = np.zeros((N, M.shape[1]), dtype=np.int64)
        for j in range(M.shape[1]):
            acc = np.zeros(N, dtype=np.int64)
            for i in range(d):
                if M[i, j]:
                    acc = self.add(acc, self.mul(V[:, i], M[i, j]))
            out[:, j] = acc
        return out

    def mat_mul(self, A, B):
        return self.vec_times_matrix(np.asarray(A), B)

    def scalar_times(self, c, V):
        return self.mul(np.asarray(V), c)


@lru_cache(maxsize=None)
def make_field(p, f=1):
    return FiniteField(p, f)


def field_of_order(q):
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, f), = fac.items()
    return make_field(p, f)
