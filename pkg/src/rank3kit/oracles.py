"""Slow, independent reference computations used to cross-check fast paths.

Nothing here touches a stabilizer chain. Each oracle works from generators
(or a multiplication table) by exhaustive closure.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from rank3kit.errors import CapacityError


def _arrays(gens):
    return [np.asarray(getattr(g, "images", g), dtype=np.intp) for g in gens]


def enumerate_elements(gens, n, cap=10**5):
    """All elements of <gens> as an (order, n) array, by breadth-first closure."""
    gens = _arrays(gens)
    ident = np.arange(n, dtype=np.intp)
    seen = {ident.tobytes()}
    frontier = [ident]
    out = [ident]
    while frontier:
        block = np.array(frontier)
        frontier = []
        for g in gens:
            prods = g[block]  # each h followed by g
            for row in prods:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(row)
                    out.append(row)
                    if len(out) > cap:
                        raise CapacityError("oracle_element_cap", cap)
    return np.array(out)


def element_count(gens, n, cap=10**5):
    return len(enumerate_elements(gens, n, cap))


def pair_orbit_count(gens, n):
    """Number of orbits on ordered pairs (the rank, for transitive groups)."""
    gens = _arrays(gens)
    idx = np.arange(n * n)
    x, y = np.divmod(idx, n)
    rows, cols = [idx], [idx]
    for g in gens:
        rows.append(idx)
        cols.append(g[x] * n + g[y])
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(n * n, n * n))
    count, _ = connected_components(graph, directed=True, connection="weak")
    return int(count)


def point_orbits(gens, n):
    gens = _arrays(gens)
    idx = np.arange(n)
    rows = [idx] + [idx for _ in gens]
    cols = [idx] + list(gens)
    graph = coo_matrix((np.ones(n * len(rows), dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
                       shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def _mask_image(masks, g, n):
    out = np.zeros_like(masks)
    for i in range(n):
        out |= ((masks >> i) & 1) << int(g[i])
    return out


def _set_orbit_is_partition(mask, gens, n):
    seen = {mask}
    todo = [mask]
    while todo:
        m = todo.pop()
        for g in gens:
            img = 0
            for i in range(n):
                if m >> i & 1:
                    img |= 1 << int(g[i])
            if img not in seen:
                if img & mask and img != mask:
                    return False
                seen.add(img)
                todo.append(img)
    union = 0
    total = 0
    for m in seen:
        union |= m
        total += bin(m).count("1")
    return bin(union).count("1") == total


def blocks_through_point(gens, n, point=0, max_degree=24):
    """Every block containing ``point``, by testing all candidate subsets.

    Candidates are subsets of a size dividing n; a candidate passes when its
    images under the group are pairwise equal or disjoint.
    """
    if n > max_degree:
        raise CapacityError("partition_oracle_degree", max_degree, f"degree {n}")
    gens = _arrays(gens)
    sizes = {s for s in range(1, n + 1) if n % s == 0}
    others = [i for i in range(n) if i != point]
    found = []
    chunk = 1 << 18
    total = 1 << (n - 1)
    for start in range(0, total, chunk):
        raw = np.arange(start, min(start + chunk, total), dtype=np.int64)
        # spread the n-1 free bits around the fixed point
        masks = np.zeros_like(raw)
        for k, pt in enumerate(others):
            masks |= ((raw >> k) & 1) << pt
        masks |= np.int64(1) << point
        pop = np.zeros_like(masks)
        for i in range(n):
            pop += (masks >> i) & 1
        keep = np.isin(pop, list(sizes))
        masks = masks[keep]
        for g in gens:
            img = _mask_image(masks, g, n)
            ok = (img == masks) | ((img & masks) == 0)
            masks = masks[ok]
        for m in masks.tolist():
            if _set_orbit_is_partition(m, gens, n):
                found.append(frozenset(i for i in range(n) if m >> i & 1))
    return found


def minimal_block_bruteforce(gens, n, seed):
    """Smallest block containing every seed point (blocks meet in blocks)."""
    seed = set(seed)
    p = min(seed)
    cands = [b for b in blocks_through_point(gens, n, p) if seed <= b]
    return min(cands, key=len)


def block_systems_bruteforce(gens, n):
    """All block systems as sets of frozensets (transitive input)."""
    gens = _arrays(gens)
    systems = set()
    for b in blocks_through_point(gens, n, 0):
        cells = {b}
        todo = [b]
        while todo:
            c = todo.pop()
            for g in gens:
                img = frozenset(int(g[x]) for x in c)
                if img not in cells:
                    cells.add(img)
                    todo.append(img)
        systems.add(frozenset(cells))
    return systems


# multiplication-table oracles


def multiplication_table_from_elements(E):
    """Table T with E[T[i, j]] = E[i] * E[j] (first E[i], then E[j])."""
    E = np.asarray(E, dtype=np.intp)
    N, n = E.shape
    keys = {row.tobytes(): i for i, row in enumerate(E)}
    T = np.empty((N, N), dtype=np.int32)
    for j in range(N):
        prods = E[j][E]  # row i: E[i] then E[j]
        T[:, j] = [keys[r.tobytes()] for r in prods]
    return T


def subgroup_generated_in_table(T, elems, identity):
    H = {identity}
    gens = sorted(set(int(x) for x in elems))
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for x in gens:
                y = int(T[h, x])
                if y not in H:
                    H.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(H)


def table_conjugacy_classes(T, identity):
    N = T.shape[0]
    inv = np.empty(N, dtype=np.int64)
    for i in range(N):
        inv[i] = int(np.flatnonzero(T[i] == identity)[0])
    seen = np.zeros(N, dtype=bool)
    classes = []
    for x in range(N):
        if seen[x]:
            continue
        # g^-1 x g for all g
        cls = set(int(T[T[inv[g], x], g]) for g in range(N))
        for y in cls:
            seen[y] = True
        classes.append(frozenset(cls))
    return classes


def all_normal_subgroups_table(T, identity, cap=2000):
    """Every normal subgroup, as joins of class closures in the table."""
    N = T.shape[0]
    if N > cap:
        raise CapacityError("normal_subgroup_oracle_order", cap, f"order {N}")
    classes = table_conjugacy_classes(T, identity)
    closures = set()
    for c in classes:
        closures.add(subgroup_generated_in_table(T, c, identity))
    normals = set(closures) | {frozenset([identity])}
    frontier = list(normals)
    while frontier:
        new = []
        current = list(normals)
        for a in frontier:
            for b in current:
                if a <= b or b <= a:
                    continue
                # product of two normal subgroups is their join
                la, lb = sorted(a), sorted(b)
                j = frozenset(T[np.ix_(la, lb)].ravel().tolist())
                if j not in normals:
                    normals.add(j)
                    new.append(j)
        frontier = new
    return sorted(normals, key=lambda s: (len(s), sorted(s)))


def normal_subgroups_of_perm_group(gens, n, cap=2000):
    """Normal subgroups of a permutation group as lists of element arrays."""
    E = enumerate_elements(gens, n, cap)
    T = multiplication_table_from_elements(E)
    ident = int(np.flatnonzero((E == np.arange(n)).all(axis=1))[0])
    return E, [np.array(sorted(s)) for s in all_normal_subgroups_table(T, ident, cap)]


def is_semiprimitive_oracle(gens, n, cap=2000):
    E, normals = normal_subgroups_of_perm_group(gens, n, cap)
    ident = np.arange(n)
    for members in normals:
        els = E[members]
        if len(set(els[:, 0].tolist())) == n:  # orbit of 0 is everything
            continue
        nonid = els[~(els == ident).all(axis=1)]
        if (nonid == ident).any():
            return False
    return True
