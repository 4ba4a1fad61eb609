"""Abstract groups of small order given by a multiplication table.

Used for regular normal subgroups: their automorphism groups are found by
brute force over the images of a greedy generating sequence, and the
element orbits of Aut(N) are counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from rank3kit.errors import CapacityError, GroupFileError
from rank3kit.numtheory import factorize, is_prime

TABLE_ORDER_CAP = 2000
AUT_ORDER_CAP = 512
AUT_COUNT_CAP = 200_000

TAGS = (
    "elementary-abelian",
    "frobenius-pq",
    "homocyclic-p2",
    "special-2-exp4",
    "special-p-expp",
    "none-of-listed",
)


class SmallGroupTable:
    """Group on {0..n-1} with ``table[a, b] = a * b``."""

    def __init__(self, table, labels=None, check=True):
        T = np.asarray(table, dtype=np.int64)
        n = T.shape[0]
        if T.shape != (n, n):
            raise ValueError("table must be square")
        if n > TABLE_ORDER_CAP:
            raise CapacityError("table_order", TABLE_ORDER_CAP, f"order {n}")
        self.table = T
        self.order = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if check:
            self.validate()
        self.identity = self._find_identity()
        self.inv = np.argmax(T == self.identity, axis=1)

    # construction

    @classmethod
    def from_perm_group(cls, g, cap=TABLE_ORDER_CAP):
        if g.order() > cap:
            raise CapacityError("table_order", cap, f"order {g.order()}")
        idx = g.element_index()
        N = len(idx)
        T = np.empty((N, N), dtype=np.int64)
        for j in range(N):
            T[:, j] = idx.right_mult_action(idx.element(j))
        return cls(T, check=False)

    @classmethod
    def from_elements(cls, elements, mul, labels=None):
        """Table from a list of hashable elements and a product function."""
        pos = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        T = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                T[i, j] = pos[mul(a, b)]
        return cls(T, labels=labels if labels is not None else [str(e) for e in elements])

    @classmethod
    def cyclic(cls, n):
        a = np.arange(n)
        return cls((a[:, None] + a[None, :]) % n)

    def relabel(self, perm):
        """Isomorphic copy where old element i becomes perm[i]."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        T = perm[self.table[np.ix_(inv, inv)]]
        return SmallGroupTable(T, check=False)

    # validation

    def _find_identity(self):
        T = self.table
        ar = np.arange(self.order)
        for e in range(self.order):
            if np.array_equal(T[e], ar) and np.array_equal(T[:, e], ar):
                return e
        raise ValueError("table has no identity")

    def validate(self, rng=None):
        T = self.table
        n = self.order
        ar = np.arange(n)
        if T.min() < 0 or T.max() >= n:
            raise ValueError("table entries out of range")
        if not (np.sort(T, axis=1) == ar).all() or not (np.sort(T, axis=0) == ar[:, None]).all():
            raise ValueError("table is not a Latin square")
        if n <= 200:
            # (ab)c == a(bc) for all triples
            left = T[T[:, :, None], ar[None, None, :]]
            right = T[ar[:, None, None], T[None, :, :]]
            if not np.array_equal(left, right):
                raise ValueError("table is not associative")
        else:
            rng = rng or np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, 1000))
            if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
                raise ValueError("table is not associative")
        self._find_identity()

    # element arithmetic

    def mul(self, a, b):
        return int(self.table[a, b])

    def power(self, a, k):
        r = self.identity
        for _ in range(k):
            r = self.table[r, a]
        return int(r)

    def element_orders(self):
        if not hasattr(self, "_orders"):
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n)
            ar = np.arange(n)
            k = 1
            while (orders == 0).any():
                hit = (cur == self.identity) & (orders == 0)
                orders[hit] = k
                cur = self.table[cur, ar]
                k += 1
            self._orders = orders
        return self._orders

    def exponent(self):
        e = 1
        for o in set(self.element_orders().tolist()):
            e = e * o // gcd(e, o)
        return e

    def is_abelian(self):
        return np.array_equal(self.table, self.table.T)

    def commutator(self, a, b):
        T, inv = self.table, self.inv
        return int(T[T[T[inv[a], inv[b]], a], b])

    def subgroup_generated(self, elems):
        H = np.zeros(self.order, dtype=bool)
        H[self.identity] = True
        gens = sorted(set(int(x) for x in elems))
        frontier = np.array([self.identity])
        while frontier.size and gens:
            imgs = self.table[np.ix_(frontier, gens)].ravel()
            fresh = np.unique(imgs[~H[imgs]])
            H[fresh] = True
            frontier = fresh
        return np.flatnonzero(H)

    def normal_closure(self, elems):
        T, inv = self.table, self.inv
        ar = np.arange(self.order)
        conj = set()
        for x in elems:
            conj.update(T[T[inv, x], ar].tolist())
        return self.subgroup_generated(conj)

    def derived_subgroup(self):
        T, inv = self.table, self.inv
        # all commutators a^-1 b^-1 a b
        comms = T[T[T[inv[:, None], inv[None, :]], np.arange(self.order)[:, None]], np.arange(self.order)[None, :]]
        return self.subgroup_generated(np.unique(comms))

    def center(self):
        T = self.table
        return np.flatnonzero((T == T.T).all(axis=1))

    def power_subgroup(self, p):
        ar = np.arange(self.order)
        pw = ar.copy()
        for _ in range(p - 1):
            pw = self.table[pw, ar]
        return self.subgroup_generated(np.unique(pw))

    def is_p_group(self):
        return len(factorize(self.order)) == 1 if self.order > 1 else True

    def prime(self):
        fac = factorize(self.order)
        return next(iter(fac)) if len(fac) == 1 else None

    def frattini_p_group(self):
        """Frattini subgroup of a p-group as G' G^p."""
        p = self.prime()
        if p is None:
            raise ValueError("not a p-group")
        D = self.derived_subgroup()
        P = self.power_subgroup(p)
        return self.subgroup_generated(np.concatenate([D, P]))

    def all_subgroups(self, cap=128):
        """Every subgroup, as joins of cyclic subgroups. Only for tiny orders."""
        if self.order > cap:
            raise CapacityError("subgroup_enumeration_order", cap, f"order {self.order}")
        cyclic = {frozenset(self.subgroup_generated([x]).tolist()) for x in range(self.order)}
        subs = set(cyclic)
        frontier = list(subs)
        while frontier:
            new = []
            for a in frontier:
                for c in cyclic:
                    if c <= a:
                        continue
                    j = frozenset(self.subgroup_generated(list(a | c)).tolist())
                    if j not in subs:
                        subs.add(j)
                        new.append(j)
            frontier = new
        return sorted(subs, key=lambda s: (len(s), sorted(s)))

    def frattini_by_maximal_subgroups(self, cap=128):
        subs = self.all_subgroups(cap)
        proper = [s for s in subs if len(s) < self.order]
        maximal = [s for s in proper if not any(s < t for t in proper)]
        if not maximal:
            return np.array([self.identity])
        inter = set(maximal[0])
        for m in maximal[1:]:
            inter &= m
        return np.array(sorted(inter))

    def is_elementary_abelian_subset(self, members):
        members = np.asarray(members)
        sub = self.table[np.ix_(members, members)]
        if not np.array_equal(sub, sub.T):
            return False
        orders = set(self.element_orders()[members].tolist()) - {1}
        return len(orders) <= 1 and all(is_prime(o) for o in orders)

    def is_special(self):
        """Nonabelian special: G' = Z = Frattini, elementary abelian."""
        if not self.is_p_group() or self.is_abelian():
            return False
        D = set(self.derived_subgroup().tolist())
        Z = set(self.center().tolist())
        F = set(self.frattini_p_group().tolist())
        return D == Z == F and self.is_elementary_abelian_subset(sorted(D))

    def largest_normal_p_subgroup(self, p):
        ar = np.arange(self.order)
        parts = []
        for x in ar:
            N = self.normal_closure([x])
            if len(factorize(len(N))) <= 1 and (len(N) == 1 or len(N) % p == 0):
                parts.append(N)
        if not parts:
            return np.array([self.identity])
        return self.subgroup_generated(np.concatenate(parts))

    def to_text(self):
        lines = [f"order {self.order}"]
        for row in self.table:
            lines.append(" ".join(str(int(x) + 1) for x in row))
        return "\n".join(lines) + "\n"

    # generating sequence and automorphisms

    def greedy_generators(self):
        """Generators chosen greedily: largest order first, smallest index on ties."""
        orders = self.element_orders()
        cand = sorted(range(self.order), key=lambda x: (-orders[x], x))
        gens = []
        H = np.zeros(self.order, dtype=bool)
        H[self.identity] = True
        while not H.all():
            x = next(c for c in cand if not H[c])
            gens.append(x)
            H[:] = False
            H[self.subgroup_generated(gens)] = True
        return gens

    def _spanning_trees(self, gens):
        """For each prefix gens[:j+1], BFS (element, parent, generator slot) lists."""
        trees = []
        for j in range(len(gens)):
            seen = np.zeros(self.order, dtype=bool)
            seen[self.identity] = True
            layers = []
            frontier = np.array([self.identity])
            while frontier.size:
                layer = []
                for k in range(j + 1):
                    imgs = self.table[frontier, gens[k]]
                    mask = ~seen[imgs]
                    if mask.any():
                        el, first = np.unique(imgs[mask], return_index=True)
                        par = frontier[mask][first]
                        seen[el] = True
                        layer.append((el, par, k))
                if not layer:
                    break
                layers.append(layer)
                frontier = np.concatenate([e for e, _, _ in layer])
            members = np.flatnonzero(seen)
            trees.append((layers, members))
        return trees

    def automorphisms(self, count_cap=AUT_COUNT_CAP, order_cap=AUT_ORDER_CAP):
        """Every automorphism as an image array, sorted lexicographically."""
        if self.order > order_cap:
            raise CapacityError("aut_order_cap", order_cap, f"group order {self.order}")
        gens = self.greedy_generators()
        orders = self.element_orders()
        trees = self._spanning_trees(gens)
        T = self.table
        found = []

        def extend(j, images):
            # phi on <gens[:j+1]> from the tree, then check every relation there
            layers, members = trees[j]
            phi = np.full(self.order, -1, dtype=np.int64)
            phi[self.identity] = self.identity
            for layer in layers:
                for el, par, k in layer:
                    phi[el] = T[phi[par], images[k]]
            img_set = phi[members]
            if len(np.unique(img_set)) != len(members):
                return None
            for k in range(j + 1):
                if not np.array_equal(phi[T[members, gens[k]]], T[img_set, images[k]]):
                    return None
            return phi

        def search(j, images):
            if j == len(gens):
                return
            for y in range(self.order):
                if orders[y] != orders[gens[j]]:
                    continue
                phi = extend(j, images + [y])
                if phi is None:
                    continue
                if j == len(gens) - 1:
                    found.append(phi)
                    if len(found) > count_cap:
                        raise CapacityError("aut_count_cap", count_cap)
                else:
                    search(j + 1, images + [y])

        search(0, [])
        found.sort(key=lambda a: a.tolist())
        return np.array(found)

    def automorphism_orbits(self, auts=None):
        if auts is None:
            auts = self.automorphisms()
        n = self.order
        rows = [np.arange(n)] + [np.arange(n) for _ in auts]
        cols = [np.arange(n)] + list(auts)
        graph = coo_matrix((np.ones(n * len(rows), dtype=np.int8),
                            (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))
        count, labels = connected_components(graph, directed=True, connection="weak")
        orbits = [np.flatnonzero(labels == c) for c in range(count)]
        orbits.sort(key=lambda o: (len(o), int(o[0])))
        return orbits


# shape predicates for regular normal subgroups, each evaluated independently


def is_elementary_abelian(t: SmallGroupTable) -> bool:
    return t.order > 1 and t.is_abelian() and t.is_elementary_abelian_subset(np.arange(t.order))


def is_homocyclic_p2(t: SmallGroupTable) -> bool:
    """Z_{p^2}^k: abelian of exponent p^2 with |Omega_1|^2 = |G|."""
    p = t.prime()
    if p is None or not t.is_abelian() or t.exponent() != p * p:
        return False
    omega1 = int(((t.element_orders() == 1) | (t.element_orders() == p)).sum())
    return omega1 * omega1 == t.order


def is_special_2_exp4(t: SmallGroupTable) -> bool:
    return t.prime() == 2 and t.exponent() == 4 and t.is_special()


def is_special_p_expp(t: SmallGroupTable) -> bool:
    p = t.prime()
    return p is not None and p != 2 and t.exponent() == p and t.is_special()


def frobenius_pq_witness(t: SmallGroupTable):
    """(p, q, kernel size) if t is a Frobenius group with p-group kernel and Z_q complement."""
    fac = factorize(t.order) if t.order > 1 else {}
    if len(fac) != 2:
        return None
    for p, q in (tuple(fac), tuple(fac)[::-1]):
        if fac[q] != 1:
            continue
        P = t.largest_normal_p_subgroup(p)
        if len(P) * q != t.order:
            continue
        orders = t.element_orders()
        T = t.table
        for x in np.flatnonzero(orders == q):
            # x acts fixed-point-freely on P: only the identity of P commutes with x
            comm = [y for y in P if T[x, y] == T[y, x]]
            if comm == [t.identity]:
                return p, q, len(P)
    return None


def classify_regular_normal(t: SmallGroupTable) -> str:
    if is_elementary_abelian(t):
        return "elementary-abelian"
    if frobenius_pq_witness(t) is not None:
        return "frobenius-pq"
    if is_homocyclic_p2(t):
        return "homocyclic-p2"
    if is_special_2_exp4(t):
        return "special-2-exp4"
    if is_special_p_expp(t):
        return "special-p-expp"
    return "none-of-listed"


@dataclass
class AutOrbitResult:
    orbit_count: int
    tag: str
    aut_order: int
    orbit_sizes: list


def automorphism_orbit_count(t: SmallGroupTable) -> AutOrbitResult:
    auts = t.automorphisms()
    orbits = t.automorphism_orbits(auts)
    return AutOrbitResult(len(orbits), classify_regular_normal(t), len(auts), sorted(len(o) for o in orbits))


def is_frobenius_with_cyclic_complement(t, p):
    """(True, (a, |R|)) when O_p = Z_p^a has a cyclic complement R acting fixed-point-freely.

    Accepts a SmallGroupTable or a PermGroup (converted to a table).
    """
    if not isinstance(t, SmallGroupTable):
        t = SmallGroupTable.from_perm_group(t)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    P = t.largest_normal_p_subgroup(p)
    if len(P) == 1 or not t.is_elementary_abelian_subset(P):
        return False, None
    a = factorize(len(P))[p]
    rsize = t.order // len(P)
    if rsize == 1 or rsize % p == 0:
        return False, None
    orders = t.element_orders()
    T = t.table
    Pset = set(P.tolist())
    for x in np.flatnonzero(orders == rsize):
        R = t.subgroup_generated([x])
        if any(int(y) in Pset for y in R if y != t.identity):
            continue
        ok = True
        for r in R:
            if r == t.identity:
                continue
            if any(T[r, y] == T[y, r] for y in P if y != t.identity):
                ok = False
                break
        if ok:
            return True, (a, rsize)
    return False, None


def parse_table_text(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln and not ln.startswith("#")]
    if not lines:
        raise GroupFileError("empty table file")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "order":
        raise GroupFileError("expected header 'order n'", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise GroupFileError("bad order", lineno) from None
    if len(lines) - 1 != n:
        raise GroupFileError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for lineno, ln in lines[1:]:
        try:
            row = [int(x) - 1 for x in ln.split()]
        except ValueError:
            raise GroupFileError("non-integer entry", lineno) from None
        if len(row) != n:
            raise GroupFileError(f"row has {len(row)} entries, expected {n}", lineno)
        if min(row) < 0 or max(row) >= n:
            raise GroupFileError(f"entry out of range 1..{n}", lineno)
        rows.append(row)
    try:
        return SmallGroupTable(rows)
    except ValueError as e:
        raise GroupFileError(str(e)) from None


# a few named groups


def quaternion8():
    # elements (sign, unit) with unit in {1, i, j, k}
    units = ["1", "i", "j", "k"]
    mult = {("1", x): (0, x) for x in units}
    mult.update({(x, "1"): (0, x) for x in units})
    mult.update({("i", "i"): (1, "1"), ("j", "j"): (1, "1"), ("k", "k"): (1, "1"),
                 ("i", "j"): (0, "k"), ("j", "k"): (0, "i"), ("k", "i"): (0, "j"),
                 ("j", "i"): (1, "k"), ("k", "j"): (1, "i"), ("i", "k"): (1, "j")})
    elements = [(s, x) for s in (0, 1) for x in units]

    def mul(a, b):
        s, x = mult[(a[1], b[1])]
        return ((a[0] + b[0] + s) % 2, x)

    return SmallGroupTable.from_elements(elements, mul)


def elementary_abelian(p, k):
    elements = [tuple((i // p**j) % p for j in range(k)) for i in range(p**k)]
    return SmallGroupTable.from_elements(elements, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)))


def heisenberg(p, m=1):
    """Triples (a, b, c) in F_p^m x F_p^m x F_p with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b')."""
    import itertools

    vecs = list(itertools.product(range(p), repeat=m))
    elements = [(a, b, c) for a in vecs for b in vecs for c in range(p)]

    def mul(x, y):
        a, b, c = x
        a2, b2, c2 = y
        dot = sum(u * v for u, v in zip(a, b2))
        return (tuple((u + v) % p for u, v in zip(a, a2)),
                tuple((u + v) % p for u, v in zip(b, b2)),
                (c + c2 + dot) % p)

    return SmallGroupTable.from_elements(elements, mul)


def alternating4():
    import itertools

    perms = [p for p in itertools.permutations(range(4))
             if sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j]) % 2 == 0]
    return SmallGroupTable.from_elements(perms, lambda a, b: tuple(b[a[i]] for i in range(4)))

