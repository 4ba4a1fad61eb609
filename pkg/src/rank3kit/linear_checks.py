"""Spot checks on small transitive linear groups T <= GL_d(p).

Two statements are checked by exhaustive subgroup enumeration inside a few
tiny ambient groups:

* every normal subgroup of T that fixes a proper nonzero F_p-subspace is cyclic;
* among the transitive T considered, only GL_3(2) has a subgroup of index p^d.

Groups act on the nonzero vectors of F_p^d; field elements double as
F_p-coordinate vectors, so semilinear maps of F_(p^f) are F_p-linear here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from rank3kit.field import make_field
from rank3kit.group import PermGroup
from rank3kit.linear import linear_group_generators
from rank3kit.smallgroups import SmallGroupTable

SUBGROUP_CAP = 400


@dataclass
class Ambient:
    label: str
    p: int
    d: int
    group: PermGroup  # on the p^d - 1 nonzero vectors


def _gamma_l1(p, f):
    """GammaL_1(p^f) on the nonzero field elements (point x - 1)."""
    F = make_field(p, f)
    ar = np.arange(1, F.q)
    mult = F.mul(ar, F.primitive) - 1
    frob = F.frob(ar, 1) - 1
    return PermGroup([mult, frob], degree=F.q - 1)


def _gl_over_prime(d, q):
    """GL_d(q) on nonzero vectors; as F_p-linear maps of F_p^(d f)."""
    F = make_field(*_pf(q))
    gens = [g[1:] - 1 for g in linear_group_generators("GL", d, F)]
    return PermGroup(gens, degree=q**d - 1)


def _pf(q):
    for p in (2, 3, 5, 7):
        f = 0
        x = q
        while x % p == 0:
            x //= p
            f += 1
        if x == 1 and f:
            return p, f
    raise ValueError(q)


def corpus_ambients():
    return [
        Ambient("GammaL_1(8)", 2, 3, _gamma_l1(2, 3)),
        Ambient("GammaL_1(9)", 3, 2, _gamma_l1(3, 2)),
        Ambient("GL_2(3)", 3, 2, _gl_over_prime(2, 3)),
        Ambient("GL_2(4)", 2, 4, _gl_over_prime(2, 4)),
        Ambient("GL_2(2)", 2, 2, _gl_over_prime(2, 2)),
        Ambient("GL_3(2)", 2, 3, _gl_over_prime(3, 2)),
    ]


def proper_subspaces(p, d):
    """Proper nonzero F_p-subspaces, as frozensets of nonzero points."""
    q = p**d
    V = np.array([[(x // p**i) % p for i in range(d)] for x in range(q)])
    weights = p ** np.arange(d)
    subs = set()
    for k in range(1, d):
        coeffs = np.array(list(product(range(p), repeat=k)))
        for basis in combinations(range(1, q), k):
            span = set(((coeffs @ V[list(basis)]) % p @ weights).tolist())
            if len(span) == p**k:
                subs.add(frozenset(x - 1 for x in span if x))
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


@dataclass
class SpotCheckResult:
    ambient: str
    transitive_subgroups: int
    reducible_normal_checked: int
    noncyclic_reducible_normal: list = field(default_factory=list)
    prime_power_index: list = field(default_factory=list)  # |T| with a subgroup of index p^d

    @property
    def ok(self):
        return not self.noncyclic_reducible_normal


def _is_cyclic(table: SmallGroupTable, members):
    orders = table.element_orders()[list(members)]
    return int(orders.max()) == len(members)


def spot_check(amb: Ambient) -> SpotCheckResult:
    G = amb.group
    table = SmallGroupTable.from_perm_group(G)
    E = G.element_index().E
    subs = table.all_subgroups(cap=SUBGROUP_CAP)
    spaces = proper_subspaces(amb.p, amb.d)
    npts = G.degree
    T_ = table.table
    inv = table.inv

    def transitive(members):
        return len(np.unique(E[list(members), 0])) == npts

    def normal_in(R, T):
        return all(int(T_[T_[inv[t], r], t]) in R for t in T for r in R)

    def invariant_space(R):
        for S in spaces:
            pts = sorted(S)
            if all(set(E[r][pts].tolist()) == S for r in R):
                return S
        return None

    res = SpotCheckResult(amb.label, 0, 0)
    pd = amb.p**amb.d
    for T in subs:
        if not transitive(T):
            continue
        res.transitive_subgroups += 1
        for R in subs:
            if len(R) > len(T) or not R <= T or len(R) == 1:
                continue
            if len(T) == pd * len(R) and len(T) not in res.prime_power_index:
                res.prime_power_index.append(len(T))
            if not normal_in(R, T):
                continue
            if invariant_space(R) is None:
                continue
            res.reducible_normal_checked += 1
            if not _is_cyclic(table, R):
                res.noncyclic_reducible_normal.append((len(T), len(R)))
    return res
