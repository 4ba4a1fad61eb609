"""Explicit example groups: affine 16-point pair, unitary Sylow model,
holomorph of an extraspecial group and the sum-zero wreath construction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from rank3kit.errors import CapacityError, HypothesisError
from rank3kit.field import make_field
from rank3kit.group import PermGroup, subgroup_from_members
from rank3kit.linear import linear_group_generators
from rank3kit.numtheory import as_prime_power, is_prime
from rank3kit.smallgroups import SmallGroupTable, heisenberg

# F_2^4 matrices; rows are images of basis vectors (v -> v M)
AFFINE16_MATRICES = {
    "G1": (
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]],
    ),
    "G2": (
        [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]],
        [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    ),
}


def affine_group(F, d, matrices, extra_vector_perms=()):
    """V : <matrices> acting on all q^d vectors (translations by basis vectors)."""
    V = F.vector_table(d)
    gens = []
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        gens.append(F.vector_index(F.add(V, e[None, :])))
    for M in matrices:
        gens.append(F.vector_index(F.vec_times_matrix(V, np.asarray(M))))
    gens.extend(extra_vector_perms)
    return PermGroup(gens, degree=F.q**d)


def build_affine16(which="G2") -> PermGroup:
    if which not in AFFINE16_MATRICES:
        raise ValueError("which must be 'G1' or 'G2'")
    G = affine_group(make_field(2), 4, AFFINE16_MATRICES[which])
    G.name = f"F_2^4:H ({which})"
    return G


def matrix_linear_part(which="G2") -> PermGroup:
    """H_i acting on the 16 vectors (zero fixed)."""
    F = make_field(2)
    V = F.vector_table(4)
    gens = [F.vector_index(F.vec_times_matrix(V, np.asarray(M))) for M in AFFINE16_MATRICES[which]]
    return PermGroup(gens, degree=16)


# unitary Sylow model: N = {(alpha, beta) : beta + beta^q = -alpha^(q+1)} over F_{q^2}


@dataclass
class SylowUnitaryModel:
    q: int
    elements: list
    table: SmallGroupTable
    group: PermGroup
    torus_orbits: list
    rank: int
    claimed_rank: int = 3

    @property
    def discrepancy(self):
        return self.rank != self.claimed_rank


def build_unitary_sylow(q=3) -> SylowUnitaryModel:
    """[q^3] : Z_(q^2-1) acting on N by right multiplication and the torus.

    Product (a, b)(a', b') = (a + a', b + b' - a a'^q); the torus generator
    sends (a, b) to (t a, t^(q+1) b) with t primitive in F_(q^2).
    """
    pp = as_prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    if q > 8:
        raise CapacityError("unitary_sylow_q", 8, f"q = {q}")
    p, f = pp
    F = make_field(p, 2 * f)
    Q = q
    elements = [(a, b) for a in range(F.q) for b in range(F.q)
                if int(F.add(b, F.pow_array(b, Q))) == int(F.neg(F.pow_array(a, Q + 1)))]
    if len(elements) != q**3:
        raise AssertionError("wrong number of elements in N")
    pos = {e: i for i, e in enumerate(elements)}

    def mul(x, y):
        a, b = x
        a2, b2 = y
        cross = int(F.mul(a, F.pow_array(a2, Q)))
        return (int(F.add(a, a2)), int(F.sub(F.add(b, b2), cross)))

    table = SmallGroupTable.from_elements(elements, mul)
    t = F.primitive
    tq = int(F.pow_array(t, Q + 1))
    torus = np.array([pos[(int(F.mul(a, t)), int(F.mul(b, tq)))] for a, b in elements])
    gens = [table.table[:, g] for g in table.greedy_generators()]
    G = PermGroup(gens + [torus], degree=q**3, name=f"[{q}^3]:Z_{q * q - 1}")
    if G.order() != q**3 * (q * q - 1):
        raise AssertionError(f"order {G.order()} differs from q^3(q^2-1)")
    torus_group = PermGroup([torus], degree=q**3)
    orbits = sorted(torus_group.orbits(), key=lambda o: (len(o), min(o)))
    return SylowUnitaryModel(q, elements, table, G, orbits, G.rank())


# holomorph of the extraspecial group p^(1+2m) of exponent p

# brute-force Aut(N) is hopeless beyond 5^(1+2); 3^(1+4) already has ~8 10^6 automorphisms
HOLOMORPH_DEGREE_CAP = 200


@dataclass
class Holomorph:
    table: SmallGroupTable
    group: PermGroup
    aut_order: int


def holomorph(t: SmallGroupTable) -> Holomorph:
    """N : Aut(N) on the elements of N, Aut(N) by brute force."""
    auts = t.automorphisms()
    n = t.order
    A = subgroup_from_members(n, auts, range(len(auts)))
    if A.order() != len(auts):
        raise AssertionError("automorphisms do not form a group of the expected order")
    right = [t.table[:, g] for g in t.greedy_generators()]
    G = PermGroup(right + [a for a in A.gen_arrays], degree=n)
    return Holomorph(t, G, len(auts))


def build_extraspecial_holomorph(p=3, m=1) -> Holomorph:
    if not is_prime(p) or p == 2:
        raise HypothesisError("p must be an odd prime")
    if p ** (1 + 2 * m) > HOLOMORPH_DEGREE_CAP:
        raise CapacityError("holomorph_degree", HOLOMORPH_DEGREE_CAP, f"p^(1+2m) = {p ** (1 + 2 * m)}")
    h = holomorph(heisenberg(p, m))
    h.group.name = f"Hol({p}^(1+{2 * m}))"
    return h


# sum-zero subgroup of V^n with diagonal GL(V) and S_n


def build_sum_zero_example(dV=2, pV=2, n=3) -> PermGroup:
    """(W : D) : S_n on V x {1..n}; point (v, i) is i |V| + v."""
    if n < 3:
        raise HypothesisError("n must be at least 3")
    F = make_field(pV)
    size = pV**dV
    if size * n > 1000:
        raise CapacityError("sum_zero_degree", 1000, f"{size * n} points")
    V = F.vector_table(dV)
    total = size * n

    def blockwise(perms):
        out = np.empty(total, dtype=np.intp)
        for i, pm in enumerate(perms):
            out[i * size:(i + 1) * size] = pm + i * size
        return out

    ident = np.arange(size)
    gens = []
    for k in range(dV):
        e = np.zeros(dV, dtype=np.int64)
        e[k] = 1
        plus = F.vector_index(F.add(V, e[None, :]))
        minus = F.vector_index(F.sub(V, e[None, :]))
        for j in range(1, n):
            parts = [ident] * n
            parts[0], parts[j] = plus, minus
            gens.append(blockwise(parts))
    for g in linear_group_generators("GL", dV, F, V):
        gens.append(blockwise([g] * n))
    for cyc in ([1, 0] + list(range(2, n)), list(range(1, n)) + [0]):
        sigma = np.empty(total, dtype=np.intp)
        for i in range(n):
            sigma[i * size:(i + 1) * size] = np.arange(size) + cyc[i] * size
        gens.append(sigma)
    return PermGroup(gens, degree=total, name=f"sum-zero({dV},{pV},{n})")
