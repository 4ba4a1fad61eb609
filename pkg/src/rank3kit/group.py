"""Permutation groups backed by an incremental Schreier-Sims stabilizer chain.

Internally permutations are numpy index arrays, and the product ``a * b``
(first a, then b) is ``b[a]``. Transversals are kept as Schreier vectors, so
a coset representative is a word in the level generators that is multiplied
out on demand.

The chain is built in two phases: random Schreier-Sims with a fixed seed to
find a small strong generating set, then a deterministic pass that sifts
every Schreier generator. Only the second phase certifies the order. When a
caller already holds a certified order (for instance a subgroup chain cut
out of a verified one) the build stops as soon as the orbit product reaches
it.
"""

from __future__ import annotations

import logging
from math import prod

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from rank3kit.errors import CapacityError, HypothesisError
from rank3kit.perm import Permutation

log = logging.getLogger(__name__)

CHAIN_SEED = 20240611


class Limits:
    """Process-wide enumeration caps. Exceeding one raises CapacityError."""

    element_cap = 10**6
    partition_oracle_degree = 24
    transversal_cache_entries = 4 * 10**6


limits = Limits()


def identity_array(n):
    return np.arange(n, dtype=np.intp)


def inverse_array(a):
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


def _as_array(g):
    if isinstance(g, Permutation):
        return np.array(g.images, dtype=np.intp)
    return np.asarray(g, dtype=np.intp)


def small_dtype(n):
    if n <= 256:
        return np.uint8
    if n <= 65536:
        return np.uint16
    return np.uint32


class _Level:
    __slots__ = ("point", "gens", "invs", "sv", "orbit", "done", "cache")

    def __init__(self, point, n):
        self.point = point
        self.gens = []
        self.invs = []
        # -2: outside the orbit, -1: root, otherwise index of the tree edge generator
        self.sv = np.full(n, -2, dtype=np.int64)
        self.sv[point] = -1
        self.orbit = [point]
        self.done = [0]
        self.cache = {}

    def copy(self):
        new = _Level.__new__(_Level)
        new.point = self.point
        new.gens = list(self.gens)
        new.invs = list(self.invs)
        new.sv = self.sv.copy()
        new.orbit = list(self.orbit)
        new.done = list(self.done)
        new.cache = dict(self.cache)
        return new

    def add_generator(self, g, ginv):
        self.gens.append(g)
        self.invs.append(ginv)
        gi = len(self.gens) - 1
        sv = self.sv
        frontier = np.array(self.orbit, dtype=np.intp)
        use = [gi]
        while frontier.size:
            found = []
            for j in use:
                imgs = self.gens[j][frontier]
                fresh = imgs[sv[imgs] == -2]
                if fresh.size:
                    _, first = np.unique(fresh, return_index=True)
                    fresh = fresh[np.sort(first)]
                    sv[fresh] = j
                    found.append(fresh)
            if not found:
                break
            frontier = np.concatenate(found)
            self.orbit.extend(frontier.tolist())
            self.done.extend([0] * frontier.size)
            use = range(len(self.gens))

    def transversal(self, pt):
        """Element mapping the level point to ``pt``."""
        u = self.cache.get(pt)
        if u is not None:
            return u
        word = []
        q = pt
        sv = self.sv
        while sv[q] != -1:
            j = sv[q]
            word.append(j)
            q = self.invs[j][q]
        u = identity_array(len(sv))
        for j in reversed(word):
            u = self.gens[j][u]
        if len(self.orbit) * len(sv) <= limits.transversal_cache_entries:
            self.cache[pt] = u
        return u

    def transversal_matrix(self, dtype):
        n = len(self.sv)
        out = np.empty((len(self.orbit), n), dtype=dtype)
        for k, pt in enumerate(self.orbit):
            out[k] = self.transversal(pt)
        return out


class StabilizerChain:
    """Base, strong generators per level and Schreier-vector transversals."""

    def __init__(self, degree, generators=(), base_prefix=(), known_order=None, seed=CHAIN_SEED):
        self.degree = degree
        self.ident = identity_array(degree)
        self.levels = [_Level(int(b), degree) for b in base_prefix]
        self.known_order = known_order
        self.rng = np.random.default_rng(seed)
        gens = [g for g in (_as_array(x) for x in generators) if not np.array_equal(g, self.ident)]
        self._input_gens = gens
        for g in gens:
            self._place(g, 0)
        if self._reached():
            return
        self._random_phase(gens)
        if not self._reached():
            self._complete()

    # construction

    def _reached(self):
        return self.known_order is not None and self.order() == self.known_order

    def _new_level_point(self, h):
        moved = np.flatnonzero(h != self.ident)
        return int(moved[0])

    def _insert(self, h, lo, hi):
        """Add h as strong generator to levels lo..hi, creating level hi if needed."""
        if hi == len(self.levels):
            self.levels.append(_Level(self._new_level_point(h), self.degree))
        hinv = inverse_array(h)
        for k in range(lo, hi + 1):
            self.levels[k].add_generator(h, hinv)

    def _place(self, g, lo):
        h, j = self.sift(g)
        if j == len(self.levels) and np.array_equal(h, self.ident):
            return False
        self._insert(h, lo, j)
        return True

    def _random_phase(self, gens):
        if not gens:
            return
        rng = self.rng
        pool = [g.copy() for g in gens]
        while len(pool) < 10:
            pool.append(pool[len(pool) % len(gens)].copy())
        acc = self.ident.copy()
        for _ in range(30):
            acc = self._shake(pool, acc)
        quiet = 0
        while quiet < 12:
            acc = self._shake(pool, acc)
            h, j = self.sift(acc)
            if j == len(self.levels) and np.array_equal(h, self.ident):
                quiet += 1
            else:
                self._insert(h, 1 if j >= 1 else 0, j)
                quiet = 0
                if self._reached():
                    return

    def _shake(self, pool, acc):
        rng = self.rng
        i, j = rng.choice(len(pool), size=2, replace=False)
        x = pool[j] if rng.random() < 0.5 else inverse_array(pool[j])
        if rng.random() < 0.5:
            pool[i] = x[pool[i]]
        else:
            pool[i] = pool[i][x]
        return pool[i][acc]

    def _verify_level(self, i):
        L = self.levels[i]
        sv = L.sv
        for k, pt in enumerate(L.orbit):
            while L.done[k] < len(L.gens):
                j = L.done[k]
                L.done[k] += 1
                img = int(L.gens[j][pt])
                if sv[img] == j and L.invs[j][img] == pt:
                    continue  # tree edge: trivial Schreier generator
                s = L.gens[j][L.transversal(pt)]
                h, lev = self.sift(s, i)
                if lev < len(self.levels) or not np.array_equal(h, self.ident):
                    return h, lev
        return None

    def _complete(self):
        i = len(self.levels) - 1
        while i >= 0:
            res = self._verify_level(i)
            if res is None:
                i -= 1
                continue
            h, j = res
            self._insert(h, i + 1, j)
            if self._reached():
                return
            i = j

    def extend(self, g):
        """Enlarge the chain to the group generated together with g.

        Returns False when g was already a member.
        """
        g = _as_array(g)
        if not self._place(g, 0):
            return False
        self.known_order = None
        self._complete()
        return True

    # queries

    def sift(self, h, start=0):
        for i in range(start, len(self.levels)):
            L = self.levels[i]
            pt = h[L.point]
            sv = L.sv
            if sv[pt] == -2:
                return h, i
            while sv[pt] != -1:
                j = sv[pt]
                inv = L.invs[j]
                h = inv[h]
                pt = inv[pt]
        return h, len(self.levels)

    def contains(self, g):
        g = _as_array(g)
        if len(g) != self.degree:
            return False
        h, j = self.sift(g)
        return j == len(self.levels) and np.array_equal(h, self.ident)

    def order(self):
        return prod(len(L.orbit) for L in self.levels)

    @property
    def base(self):
        return [L.point for L in self.levels]

    def orbit_lengths(self):
        return [len(L.orbit) for L in self.levels]

    def strong_generators(self, level=0):
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)

    def subchain(self, start):
        """Chain of the pointwise stabilizer of the first ``start`` base points."""
        new = StabilizerChain.__new__(StabilizerChain)
        new.degree = self.degree
        new.ident = self.ident
        new.levels = [L.copy() for L in self.levels[start:]]
        new.known_order = None
        new.rng = np.random.default_rng(CHAIN_SEED)
        new._input_gens = new.strong_generators(0)
        return new

    def elements(self, cap=None):
        """All elements as a (|G|, n) array of a compact unsigned dtype."""
        cap = limits.element_cap if cap is None else cap
        order = self.order()
        if order > cap:
            raise CapacityError("element_cap", cap, f"group order {order}")
        dtype = small_dtype(self.degree)
        E = self.ident.astype(dtype)[None, :]
        for L in reversed(self.levels):
            U = L.transversal_matrix(dtype)
            out = np.empty((U.shape[0] * E.shape[0], self.degree), dtype=dtype)
            m = E.shape[0]
            for b in range(U.shape[0]):
                out[b * m:(b + 1) * m] = U[b][E]
            E = out
        return E


def _row_keys(rows, n):
    """Integer keys for rows of point images, collision free."""
    rows = np.asarray(rows, dtype=np.int64)
    k = rows.shape[1]
    if k == 0:
        return np.zeros(rows.shape[0], dtype=np.int64)
    if k * np.log2(max(n, 2)) < 62:
        weights = n ** np.arange(k, dtype=np.int64)
        return rows @ weights
    # fall back to ranking rows lexicographically
    order = np.lexsort(rows.T[::-1])
    srt = rows[order]
    new = np.ones(len(rows), dtype=bool)
    new[1:] = (srt[1:] != srt[:-1]).any(axis=1)
    ranks = np.cumsum(new) - 1
    keys = np.empty(len(rows), dtype=np.int64)
    keys[order] = ranks
    return keys


class ElementIndex:
    """Enumerated elements of a group with fast lookup of any member's index.

    Members are identified by their images of the base points.
    """

    def __init__(self, group, cap=None):
        self.group = group
        chain = group.chain
        self.base = np.array(chain.base, dtype=np.intp)
        self.E = chain.elements(cap)
        self.n = group.degree
        self._key_rows = None
        keys = self._keys(self.E[:, self.base])
        self.order_idx = np.argsort(keys, kind="stable")
        self.sorted_keys = keys[self.order_idx]

    def _keys(self, rows):
        if self.base.size == 0:
            return np.zeros(len(rows), dtype=np.int64)
        if self.base.size * np.log2(max(self.n, 2)) < 62:
            weights = self.n ** np.arange(self.base.size, dtype=np.int64)
            return np.asarray(rows, dtype=np.int64) @ weights
        raise CapacityError("base_key_width", 62, "base too long for integer element keys")

    def __len__(self):
        return len(self.E)

    def lookup_rows(self, base_images):
        keys = self._keys(base_images)
        pos = np.searchsorted(self.sorted_keys, keys)
        pos = np.minimum(pos, len(self.sorted_keys) - 1)
        if not np.array_equal(self.sorted_keys[pos], keys):
            raise ValueError("element not in group")
        return self.order_idx[pos]

    def index_of(self, g):
        g = _as_array(g)
        return int(self.lookup_rows(g[self.base][None, :])[0])

    def conjugation_action(self, g):
        """Index permutation h -> g^-1 h g."""
        g = _as_array(g)
        ginv = inverse_array(g)
        imgs = g[self.E[:, ginv[self.base]].astype(np.intp)]
        return self.lookup_rows(imgs)

    def right_mult_action(self, g):
        """Index permutation h -> h g."""
        g = _as_array(g)
        imgs = g[self.E[:, self.base].astype(np.intp)]
        return self.lookup_rows(imgs)

    def left_mult_action(self, g):
        """Index permutation h -> g h."""
        g = _as_array(g)
        imgs = self.E[:, g[self.base]]
        return self.lookup_rows(imgs)

    def element(self, i):
        return self.E[i].astype(np.intp)

    def conjugacy_classes(self):
        """List of index arrays, one per class, ordered by smallest member index."""
        N = len(self.E)
        rows, cols = [], []
        for g in self.group.gen_arrays:
            rows.append(np.arange(N))
            cols.append(self.conjugation_action(g))
        if rows:
            r = np.concatenate(rows)
            c = np.concatenate(cols)
        else:
            r = c = np.arange(N)
        graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
        _, labels = connected_components(graph, directed=True, connection="weak")
        order = np.argsort(labels, kind="stable")
        splits = np.flatnonzero(np.diff(labels[order])) + 1
        classes = np.split(order, splits)
        classes.sort(key=lambda a: int(a[0]))
        return classes

    def element_orders(self):
        """Order of every element, vectorized by repeated multiplication."""
        N = len(self.E)
        orders = np.zeros(N, dtype=np.int64)
        cur = self.E.astype(np.intp)
        ident = identity_array(self.n)
        k = 1
        remaining = np.arange(N)
        while remaining.size:
            is_id = (cur == ident).all(axis=1)
            orders[remaining[is_id]] = k
            keep = ~is_id
            remaining = remaining[keep]
            cur = cur[keep]
            if not remaining.size:
                break
            base_el = self.E[remaining].astype(np.intp)
            cur = np.take_along_axis(base_el, cur, axis=1)
            k += 1
        return orders


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, generators, degree=None, order=None, chain=None, name=None):
        arrs = [_as_array(g) for g in generators]
        if degree is None:
            if not arrs:
                raise ValueError("degree required for an empty generator list")
            degree = len(arrs[0])
        for a in arrs:
            if len(a) != degree:
                raise ValueError(f"degree mismatch: generator of degree {len(a)} in group of degree {degree}")
            if not np.array_equal(np.sort(a), np.arange(degree)):
                raise ValueError("generator is not a permutation")
        ident = identity_array(degree)
        arrs = [a for a in arrs if not np.array_equal(a, ident)]
        self.degree = degree
        self.gen_arrays = arrs
        self.name = name
        self._known_order = order
        self._chain = chain
        self._eindex = None
        self._cache = {}

    # constructors

    @classmethod
    def trivial(cls, n):
        return cls([], degree=n)

    @classmethod
    def symmetric(cls, n):
        if n == 1:
            return cls.trivial(1)
        gens = [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [tuple(range(n))])]
        return cls(gens)

    @classmethod
    def alternating(cls, n):
        if n < 3:
            return cls.trivial(n)
        gens = [Permutation.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
        return cls(gens)

    @classmethod
    def cyclic(cls, n):
        return cls([Permutation.from_cycles(n, [tuple(range(n))])]) if n > 1 else cls.trivial(1)

    @classmethod
    def dihedral(cls, n):
        """Symmetries of a regular n-gon on its vertices (order 2n)."""
        rot = Permutation.from_cycles(n, [tuple(range(n))])
        refl = Permutation([(-i) % n for i in range(n)])
        return cls([rot, refl])

    # basic data

    @property
    def generators(self):
        return [Permutation.from_array(a) for a in self.gen_arrays]

    @property
    def chain(self):
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.gen_arrays, known_order=self._known_order)
        return self._chain

    def chain_with_base(self, prefix):
        """A fresh chain whose base starts with ``prefix``."""
        return StabilizerChain(self.degree, self.chain.strong_generators(0) or self.gen_arrays,
                               base_prefix=prefix, known_order=self.order())

    def order(self):
        return self.chain.order()

    def __len__(self):
        return self.order()

    def is_trivial(self):
        return not self.gen_arrays

    def contains(self, g):
        return self.chain.contains(g)

    __contains__ = contains

    def identity(self):
        return Permutation.identity(self.degree)

    def __repr__(self):
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} ngens={len(self.gen_arrays)}>"

    def random_element(self, rng):
        """Uniform random element built from random transversal choices."""
        g = identity_array(self.degree)
        for L in reversed(self.chain.levels):
            u = L.transversal(L.orbit[int(rng.integers(len(L.orbit)))])
            g = u[g]
        return Permutation.from_array(g)

    # orbits

    def orbit(self, x):
        if not 0 <= x < self.degree:
            raise ValueError(f"point {x} out of range for degree {self.degree}")
        return orbit_of(self.gen_arrays, x, self.degree)

    def orbits(self):
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for x in range(self.degree):
            if not seen[x]:
                orb = self.orbit(x)
                seen[orb] = True
                out.append(orb)
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    def require_transitive(self):
        if not self.is_transitive():
            raise HypothesisError("group is not transitive")

    # subgroups

    def subgroup(self, gens, order=None, name=None):
        return PermGroup(gens, degree=self.degree, order=order, name=name)

    def pointwise_stabilizer(self, points):
        """Subgroup fixing every point of ``points``."""
        points = [int(p) for p in points]
        for p in points:
            if not 0 <= p < self.degree:
                raise ValueError(f"point {p} out of range for degree {self.degree}")
        if not points:
            return self
        ch = self.chain_with_base(points)
        sub = ch.subchain(len(points))
        return PermGroup(sub.strong_generators(0), degree=self.degree, chain=sub)

    def stabilizer(self, x):
        return self.pointwise_stabilizer([x])

    point_stabilizer = stabilizer

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self.gen_arrays)

    def same_group(self, other):
        return self.order() == other.order() and self.is_subgroup_of(other)

    # rank

    def suborbits(self, x=0):
        """Orbits of the stabilizer of x, sorted by (size, least point)."""
        self.require_transitive()
        st = self.stabilizer(x)
        orbs = st.orbits()
        orbs.sort(key=lambda o: (len(o), min(o)))
        return orbs

    def rank(self):
        if "rank" not in self._cache:
            self._cache["subdegrees"] = sorted(len(o) for o in self.suborbits())
            self._cache["rank"] = len(self._cache["subdegrees"])
        return self._cache["rank"]

    def subdegrees(self):
        self.rank()
        return list(self._cache["subdegrees"])

    # element enumeration

    def element_index(self, cap=None):
        if self._eindex is None:
            self._eindex = ElementIndex(self, cap)
        return self._eindex

    def elements(self, cap=None):
        return [Permutation.from_array(r) for r in self.element_index(cap).E]

    def conjugacy_classes(self, cap=None):
        idx = self.element_index(cap)
        if "classes" not in self._cache:
            self._cache["classes"] = idx.conjugacy_classes()
        return self._cache["classes"]

    def conjugacy_class_representatives(self, cap=None):
        idx = self.element_index(cap)
        return [Permutation.from_array(idx.E[c[0]]) for c in self.conjugacy_classes(cap)]

    # normal structure

    def normal_closure(self, elems):
        """Smallest normal subgroup containing ``elems``."""
        arrs = [_as_array(e) for e in elems]
        for a in arrs:
            if not self.contains(a):
                raise ValueError("element does not lie in the group")
        return normal_closure_in(self.gen_arrays, arrs, self.degree)

    def is_normalized_by(self, gens):
        for g in gens:
            g = _as_array(g)
            ginv = inverse_array(g)
            for h in self.gen_arrays:
                if not self.contains(g[h[ginv]]):
                    return False
        return True

    def is_normal_in(self, big):
        return self.is_subgroup_of(big) and self.is_normalized_by(big.gen_arrays)

    def derived_subgroup(self):
        comms = []
        gs = self.gen_arrays
        invs = [inverse_array(g) for g in gs]
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                # [a, b] = a^-1 b^-1 a b
                c = gs[j][gs[i][invs[j][invs[i]]]]
                comms.append(c)
        return normal_closure_in(self.gen_arrays, comms, self.degree)

    def is_abelian(self):
        gs = self.gen_arrays
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                if not np.array_equal(gs[i][gs[j]], gs[j][gs[i]]):
                    return False
        return True

    def centralizer_mask(self, gens, cap=None):
        """Boolean mask over the element index: elements commuting with every g."""
        idx = self.element_index(cap)
        mask = np.ones(len(idx), dtype=bool)
        E = idx.E.astype(np.intp)
        for g in gens:
            g = _as_array(g)
            # x g == g x  <=>  g[x] == x[g]
            mask &= (g[E] == E[:, g]).all(axis=1)
        return mask

    def centralizer_of(self, gens, cap=None):
        """Centralizer in this group of the given elements, by element filter."""
        idx = self.element_index(cap)
        mask = self.centralizer_mask(gens, cap)
        members = np.flatnonzero(mask)
        return subgroup_from_members(self.degree, idx.E, members)

    def center(self, cap=None):
        return self.centralizer_of(self.gen_arrays, cap)

    def is_semiregular(self):
        """Every non-identity element is fixed-point-free."""
        for orb in self.orbits():
            if self.stabilizer(orb[0]).order() != 1:
                return False
        return True

    def is_regular(self):
        return self.is_transitive() and self.order() == self.degree


def orbit_of(gens, x, n):
    seen = np.zeros(n, dtype=bool)
    seen[x] = True
    orb = [x]
    frontier = np.array([x], dtype=np.intp)
    while frontier.size:
        found = []
        for g in gens:
            imgs = g[frontier]
            fresh = imgs[~seen[imgs]]
            if fresh.size:
                _, first = np.unique(fresh, return_index=True)
                fresh = fresh[np.sort(first)]
                seen[fresh] = True
                found.append(fresh)
        if not found:
            break
        frontier = np.concatenate(found)
        orb.extend(frontier.tolist())
    return orb


def normal_closure_in(group_gens, elems, n):
    """Normal closure of ``elems`` under conjugation by ``group_gens``."""
    ident = identity_array(n)
    start = [e for e in (_as_array(x) for x in elems) if not np.array_equal(e, ident)]
    if not start:
        return PermGroup([], degree=n)
    chain = StabilizerChain(n, start)
    ngens = list(start)
    ginvs = [inverse_array(g) for g in group_gens]
    k = 0
    while k < len(ngens):
        h = ngens[k]
        for g, gi in zip(group_gens, ginvs):
            c = g[h[gi]]  # g^-1 h g
            if chain.extend(c):
                ngens.append(c)
        k += 1
    return PermGroup(ngens, degree=n, chain=chain)


def subgroup_from_members(n, E, members):
    """Build a subgroup from a known member list (indices into E) greedily."""
    order = len(members)
    gens = []
    chain = None
    for i in members:
        g = E[i].astype(np.intp)
        if chain is None:
            if np.array_equal(g, identity_array(n)):
                continue
            chain = StabilizerChain(n, [g])
            gens.append(g)
        elif not chain.contains(g):
            chain.extend(g)
            gens.append(g)
        if chain is not None and chain.order() == order:
            break
    if chain is None:
        return PermGroup([], degree=n)
    return PermGroup(gens, degree=n, chain=chain)


def commutator_array(a, b):
    """[a, b] = a^-1 b^-1 a b for index arrays."""
    return b[a[inverse_array(b)[inverse_array(a)]]]
