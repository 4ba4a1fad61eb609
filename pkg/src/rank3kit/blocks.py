"""Block systems of transitive groups.

Minimal blocks come from the union-find closure: merge the seed, then keep
merging the images of every merged pair under each generator until nothing
changes. Induced actions (on the blocks, on one block, kernels and setwise
stabilizers) are computed by adjoining one extra point per block so that a
block stabilizer becomes an ordinary point stabilizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from rank3kit.errors import CapacityError, HypothesisError
from rank3kit.group import PermGroup, inverse_array


@dataclass(frozen=True)
class BlockSystem:
    degree: int
    parts: tuple  # tuple of sorted tuples, ordered by least point
    block_of: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_labels(cls, labels):
        labels = np.asarray(labels)
        groups = {}
        for x, lab in enumerate(labels.tolist()):
            groups.setdefault(lab, []).append(x)
        parts = sorted(tuple(sorted(p)) for p in groups.values())
        sizes = {len(p) for p in parts}
        if len(sizes) != 1:
            raise ValueError("cells of a block system must have equal size")
        block_of = np.empty(len(labels), dtype=np.intp)
        for i, p in enumerate(parts):
            block_of[list(p)] = i
        return cls(len(labels), tuple(parts), block_of)

    @classmethod
    def from_parts(cls, degree, parts):
        labels = np.full(degree, -1)
        for i, p in enumerate(parts):
            for x in p:
                if labels[x] != -1:
                    raise ValueError(f"point {x} lies in two cells")
                labels[x] = i
        if (labels < 0).any():
            raise ValueError("cells do not cover the domain")
        return cls.from_labels(labels)

    @property
    def block_size(self):
        return len(self.parts[0])

    @property
    def block_count(self):
        return len(self.parts)

    def is_trivial(self):
        return self.block_size in (1, self.degree)

    def block_containing(self, x):
        return self.parts[int(self.block_of[x])]

    def is_preserved_by(self, gens):
        for g in gens:
            g = np.asarray(g)
            for p in self.parts:
                imgs = self.block_of[g[list(p)]]
                if (imgs != imgs[0]).any():
                    return False
        return True

    def block_permutation(self, g):
        """The permutation of block indices induced by g."""
        g = np.asarray(g)
        firsts = np.array([p[0] for p in self.parts])
        return self.block_of[g[firsts]]

    def as_sets(self):
        return [set(p) for p in self.parts]

    def __eq__(self, other):
        return isinstance(other, BlockSystem) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)


def _union_find_closure(gens, n, seed):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gl = [g.tolist() for g in gens]
    queue = []
    a = seed[0]
    for b in seed[1:]:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            queue.append((a, b))
    k = 0
    while k < len(queue):
        x, y = queue[k]
        k += 1
        for g in gl:
            rx, ry = find(g[x]), find(g[y])
            if rx != ry:
                parent[ry] = rx
                queue.append((g[x], g[y]))
    return [find(x) for x in range(n)]


def minimal_block_system(g: PermGroup, seed) -> BlockSystem:
    """Finest block system with the seed points in one cell."""
    g.require_transitive()
    seed = [int(x) for x in seed]
    for x in seed:
        if not 0 <= x < g.degree:
            raise ValueError(f"point {x} out of range for degree {g.degree}")
    labels = _union_find_closure(g.gen_arrays, g.degree, seed)
    return BlockSystem.from_labels(labels)


def is_block(g: PermGroup, subset) -> bool:
    subset = sorted(set(int(x) for x in subset))
    if len(subset) <= 1:
        return True
    bs = minimal_block_system(g, subset)
    return len(bs.block_containing(subset[0])) == len(subset)


def all_block_systems(g: PermGroup, max_blocks=10000):
    """Every block system of a transitive group, trivial ones included.

    Blocks through point 0 are joins of minimal blocks seeded by pairs
    (0, x), so the lattice is closed off from those.
    """
    g.require_transitive()
    n = g.degree
    found = {}
    frontier = []
    for x in range(1, n):
        bs = minimal_block_system(g, (0, x))
        key = bs.block_containing(0)
        if key not in found:
            found[key] = bs
            frontier.append(key)
    while frontier:
        new = []
        keys = list(found)
        for a in frontier:
            for b in keys:
                if set(a) <= set(b) or set(b) <= set(a):
                    continue
                bs = minimal_block_system(g, sorted(set(a) | set(b)))
                key = bs.block_containing(0)
                if key not in found:
                    found[key] = bs
                    new.append(key)
                    if len(found) > max_blocks:
                        raise CapacityError("max_blocks", max_blocks)
        frontier = new
    systems = [BlockSystem.from_labels(np.zeros(n, dtype=int)), BlockSystem.from_labels(np.arange(n))]
    systems.extend(found.values())
    uniq = {s.parts: s for s in systems}
    return sorted(uniq.values(), key=lambda s: (s.block_size, s.parts))


def nontrivial_block_systems(g: PermGroup):
    return [s for s in all_block_systems(g) if not s.is_trivial()]


def nontrivial_block_systems_rank3(g: PermGroup):
    """Nontrivial systems of a rank 3 group: test both suborbit unions."""
    g.require_transitive()
    if g.rank() != 3:
        raise HypothesisError(f"rank is {g.rank()}, not 3")
    orbs = [o for o in g.suborbits(0) if 0 not in o]
    out = []
    for orb in orbs:
        cand = sorted([0] + list(orb))
        if is_block(g, cand):
            out.append(minimal_block_system(g, cand))
    return out


class BlockActions:
    """Kernel, stabilizers and induced groups for a fixed block system.

    The group acts on n + m points: the original domain followed by one point
    per block, which keeps every chain computation faithful.
    """

    def __init__(self, g: PermGroup, bs: BlockSystem):
        if not bs.is_preserved_by(g.gen_arrays):
            raise ValueError("partition is not preserved by the group")
        self.g = g
        self.bs = bs
        n, m = g.degree, bs.block_count
        self.n, self.m = n, m
        ext = []
        for a in g.gen_arrays:
            ext.append(np.concatenate([a, n + bs.block_permutation(a)]))
        self.ext = PermGroup(ext, degree=n + m, order=g.order())

    def restrict(self, sub: PermGroup) -> PermGroup:
        gens = [a[: self.n] for a in sub.gen_arrays]
        return PermGroup(gens, degree=self.n, order=sub.order())

    def block_point(self, i):
        return self.n + i

    def kernel(self):
        """Subgroup fixing every block setwise."""
        sub = self.ext.pointwise_stabilizer([self.n + i for i in range(self.m)])
        return self.restrict(sub)

    def setwise_stabilizer(self, blocks):
        sub = self.ext.pointwise_stabilizer([self.n + i for i in blocks])
        return self.restrict(sub)

    def stabilizer_with_points(self, blocks, points):
        """Stabilizer of the given blocks setwise and given points pointwise."""
        sub = self.ext.pointwise_stabilizer([self.n + i for i in blocks] + list(points))
        return self.restrict(sub)

    def pointwise_block_kernel(self, block):
        """K_(B): fixes every block setwise and block B pointwise."""
        pts = [self.n + i for i in range(self.m)] + list(self.bs.parts[block])
        return self.restrict(self.ext.pointwise_stabilizer(pts))

    def action_on_blocks(self) -> PermGroup:
        gens = [self.bs.block_permutation(a) for a in self.g.gen_arrays]
        kernel_order = self.kernel().order()
        return PermGroup(gens, degree=self.m, order=self.g.order() // kernel_order)

    def action_on_block(self, block=0) -> PermGroup:
        """The group induced on one block by its setwise stabilizer."""
        stab = self.setwise_stabilizer([block])
        pts = list(self.bs.parts[block])
        pos = {x: k for k, x in enumerate(pts)}
        gens = []
        for a in stab.gen_arrays:
            gens.append(np.array([pos[int(a[x])] for x in pts], dtype=np.intp))
        return PermGroup(gens, degree=len(pts))


def restrict_to_orbit(g: PermGroup, points):
    """Constituent on an invariant set, with points renumbered in given order."""
    pts = list(points)
    pos = np.full(g.degree, -1, dtype=np.intp)
    pos[pts] = np.arange(len(pts))
    gens = []
    for a in g.gen_arrays:
        img = pos[a[pts]]
        if (img < 0).any():
            raise ValueError("point set is not invariant")
        gens.append(img)
    return PermGroup(gens, degree=len(pts))


def conjugate_group(g: PermGroup, sigma):
    """Relabel points by sigma: the generators become sigma^-1 a sigma."""
    sigma = np.asarray(sigma, dtype=np.intp)
    sinv = inverse_array(sigma)
    gens = [sigma[a[sinv]] for a in g.gen_arrays]
    return PermGroup(gens, degree=g.degree)
