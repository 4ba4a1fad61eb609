"""Regenerate the vendored generator files for the two exceptional catalog groups.

3S6_deg18: stabilizer in SigmaL_3(4) of the 18 nonzero vectors spanning the
hyperoval {(1,t,t^2)} + {(0,0,1),(0,1,0)} of PG(2,4), acting on those vectors.
2M12_deg24: monomial automorphisms of the extended ternary Golay code (generator
matrix [I | A] below) acting on the 24 vectors +-e_i; point 2i is e_i and
2i+1 is -e_i.

Both constructions are searches with a fixed seed; the resulting orders are
certified by the chain and checked against |SigmaL_3(4)| / |orbit| and
2 |M12| respectively.

    python3 scripts/make_catalog_data.py [outdir]
"""

import itertools
import sys
from pathlib import Path

import numpy as np

from rank3kit.blocks import restrict_to_orbit
from rank3kit.field import make_field
from rank3kit.group import PermGroup
from rank3kit.linear import linear_group_generators
from rank3kit.perm import Permutation

SEED = 20240611


def hyperoval_group():
    F = make_field(2, 2)
    V = F.vector_table(3)
    pts = [(1, t, F.mul(t, t)) for t in range(4)] + [(0, 0, 1), (0, 1, 0)]
    vecs = sorted({int(F.vector_index(F.mul(np.array(p), c))) for p in pts for c in range(1, 4)})
    assert len(vecs) == 18
    sigma = PermGroup(linear_group_generators("SigmaL", 3, F, V), degree=64)
    assert sigma.order() == 120960
    # orbit of the 18-set certifies the stabilizer order
    start = frozenset(vecs)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for S in frontier:
            for a in sigma.gen_arrays:
                T = frozenset(int(a[x]) for x in S)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    target = sigma.order() // len(seen)
    rng = np.random.default_rng(SEED)
    gens = []
    H = PermGroup([], degree=64)
    vset = set(vecs)
    while H.order() < target:
        g = sigma.random_element(rng).array
        if {int(g[x]) for x in vecs} == vset and not H.contains(g):
            gens.append(g)
            H = PermGroup(gens, degree=64)
    G = restrict_to_orbit(H, vecs)
    assert G.order() == target == 2160
    return G, f"stabilizer order certified as |SigmaL_3(4)| / {len(seen)} = {target}"


GOLAY_A = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
]


def golay_code():
    Gm = np.hstack([np.eye(6, dtype=np.int64), np.array(GOLAY_A)])
    words = np.array([np.array(c) @ Gm % 3 for c in itertools.product(range(3), repeat=6)])
    return Gm, words


def hexad_automorphism(hexads, first):
    """Permutation preserving the hexads with prescribed images of 0..4."""
    hexset = set(hexads)
    by_pts = {}
    for h in hexads:
        for x in h:
            by_pts.setdefault(x, []).append(h)
    img = {i: first[i] for i in range(5)}

    def consistent():
        dom = set(img)
        for h in hexads:
            if set(h) <= dom and frozenset(img[x] for x in h) not in hexset:
                return False
        return True

    def search(x):
        if x == 12:
            return dict(img)
        used = set(img.values())
        for y in range(12):
            if y in used:
                continue
            img[x] = y
            if consistent():
                res = search(x + 1)
                if res:
                    return res
            del img[x]
        return None

    if not consistent():
        return None
    res = search(5)
    return None if res is None else [res[i] for i in range(12)]


def golay_group():
    Gm, words = golay_code()
    codeset = {tuple(w) for w in words}
    hexads = sorted({frozenset(np.flatnonzero(w).tolist()) for w in words if np.count_nonzero(w) == 6},
                    key=sorted)
    assert len(hexads) == 132
    rng = np.random.default_rng(SEED)
    perms = []
    M = PermGroup([], degree=12)
    while M.order() < 95040:
        first = [int(x) for x in rng.permutation(12)[:5]]
        pi = hexad_automorphism(hexads, first)
        if pi is None or M.contains(np.array(pi)):
            continue
        perms.append(pi)
        M = PermGroup([np.array(p) for p in perms], degree=12)
    assert M.order() == 95040
    lifts = []
    for pi in perms:
        found = None
        for signs in itertools.product((1, 2), repeat=12):
            ok = True
            for row in Gm:
                new = [0] * 12
                for i in range(12):
                    new[pi[i]] = row[i] * signs[pi[i]] % 3
                if tuple(new) not in codeset:
                    ok = False
                    break
            if ok:
                found = signs
                break
        assert found is not None
        # e_i -> s e_pi(i); point 2i + (sign bit)
        a = np.empty(24, dtype=np.intp)
        for i in range(12):
            flip = 0 if found[pi[i]] == 1 else 1
            a[2 * i] = 2 * pi[i] + flip
            a[2 * i + 1] = 2 * pi[i] + (1 - flip)
        lifts.append(a)
    G = PermGroup(lifts, degree=24)
    assert G.order() == 190080
    return G, "monomial automorphisms lifted from hexad-preserving permutations; order 2 |M12| certified"


def write(path, G, note):
    lines = [f"# {note}", f"degree {G.degree}"]
    lines += [Permutation(a.tolist()).to_cycle_string() for a in G.gen_arrays]
    path.write_text("\n".join(lines) + "\n")


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src/rank3kit/data"
    G, note = hyperoval_group()
    write(out / "3S6_deg18.grp", G, note)
    G, note = golay_group()
    write(out / "2M12_deg24.grp", G, note)


if __name__ == "__main__":
    main()
