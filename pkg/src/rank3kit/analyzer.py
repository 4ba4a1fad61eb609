"""Rank-3 imprimitivity pipeline: block system, kernel, induced actions and
the four-way classification of rank-3 groups with affine block action."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from rank3kit.blocks import BlockActions, BlockSystem, nontrivial_block_systems, nontrivial_block_systems_rank3
from rank3kit.blocks import restrict_to_orbit
from rank3kit.errors import HypothesisError
from rank3kit.group import PermGroup
from rank3kit.numtheory import factorize
from rank3kit.smallgroups import AUT_ORDER_CAP, SmallGroupTable, automorphism_orbit_count
from rank3kit.smallgroups import is_frobenius_with_cyclic_complement
from rank3kit.structure import class_closures, join, largest_normal_p_subgroup, socle_and_type, structure_flags

CLASSES = ("A", "B", "C", "D", "unmatched", "not-applicable")


@dataclass
class Rank3Report:
    name: str | None
    degree: int
    order: int
    rank: int
    subdegrees: list
    flags: dict
    block_system_count: int | None = None
    block_size: int | None = None
    block_count: int | None = None
    blocks: list | None = None
    kernel_order: int | None = None
    K_on_B_semiregular: bool | None = None
    K_on_B_regular: bool | None = None
    K_pointwise_B_order: int | None = None
    K_pointwise_B_transitive_on_other: bool | None = None
    block_group_order: int | None = None
    block_group_type: str | None = None
    block_group_socle_order: int | None = None
    block_group_2transitive: bool | None = None
    induced_on_block_order: int | None = None
    induced_on_block_type: str | None = None
    induced_on_block_2transitive: bool | None = None
    prime: int | None = None
    L_order: int | None = None
    centralizer_equals_L: bool | None = None
    affine_rank3_class: str = "not-applicable"
    evidence: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def as_dict(self):
        return asdict(self)


@dataclass
class _Context:
    """Intermediate groups kept alongside the report."""

    g: PermGroup
    bs: BlockSystem | None = None
    actions: BlockActions | None = None
    K: PermGroup | None = None
    KB: PermGroup | None = None
    L: PermGroup | None = None
    b0: int = 0
    b1: int = 1


def _prime_of(order):
    fac = factorize(order)
    return next(iter(fac)) if len(fac) == 1 else None


def _other_block(bs: BlockSystem, b0):
    return next(i for i in range(bs.block_count) if i != b0)


def block_data(g: PermGroup, bs: BlockSystem, cap=None):
    """Kernel, K_(B), induced groups and the relevant types for one system."""
    act = BlockActions(g, bs)
    b0 = bs.block_of[0]
    b1 = _other_block(bs, b0)
    K = act.kernel()
    KB = act.pointwise_block_kernel(b0)
    on_blocks = act.action_on_blocks()
    on_block = act.action_on_block(b0)
    return act, b0, b1, K, KB, on_blocks, on_block


def _is_2transitive(h: PermGroup):
    return h.degree == 1 or (h.is_transitive() and h.rank() == 2)


def analyze(g: PermGroup, cap=None, classify=True) -> Rank3Report:
    g.require_transitive()
    rep = Rank3Report(g.name, g.degree, g.order(), g.rank(), g.subdegrees(),
                      structure_flags(g, cap).as_dict())
    ctx = _Context(g)
    rep._ctx = ctx
    if rep.rank != 3:
        rep.notes.append(f"rank {rep.rank}: imprimitivity data only computed for rank 3")
        return rep
    systems = nontrivial_block_systems_rank3(g)
    rep.block_system_count = len(systems)
    if not systems:
        rep.notes.append("primitive rank 3 group")
        return rep
    bs = systems[0]
    act, b0, b1, K, KB, on_blocks, on_block = block_data(g, bs, cap)
    ctx.bs, ctx.actions, ctx.K, ctx.KB, ctx.b0, ctx.b1 = bs, act, K, KB, b0, b1
    rep.block_size, rep.block_count = bs.block_size, bs.block_count
    rep.blocks = [sorted(int(x) for x in part) for part in bs.parts]
    rep.kernel_order = K.order()
    if rep.kernel_order * on_blocks.order() != rep.order:
        raise AssertionError("|K| |G^B| differs from |G|")
    KonB = restrict_to_orbit(K, bs.parts[b0])
    rep.K_on_B_semiregular = KonB.is_semiregular()
    rep.K_on_B_regular = rep.K_on_B_semiregular and KonB.is_transitive()
    rep.K_pointwise_B_order = KB.order()
    other = sorted(bs.parts[b1])
    rep.K_pointwise_B_transitive_on_other = set(KB.orbit(other[0])) == set(other)

    rep.block_group_order = on_blocks.order()
    rep.block_group_2transitive = _is_2transitive(on_blocks)
    rep.induced_on_block_order = on_block.order()
    rep.induced_on_block_2transitive = _is_2transitive(on_block)
    if on_blocks.degree > 1:
        info = socle_and_type(on_blocks, cap=cap)
        rep.block_group_type = info.type
        rep.block_group_socle_order = info.socle.order()
    info_b = socle_and_type(on_block, cap=cap)
    rep.induced_on_block_type = info_b.type

    two_trans = rep.block_group_2transitive and rep.induced_on_block_2transitive
    rep.evidence["unique_block_system"] = len(systems) == 1
    if two_trans and len(systems) != 1:
        rep.notes.append("several block systems although both induced actions are 2-transitive")
    elif len(systems) != 1:
        rep.notes.append(f"{len(systems)} block systems; induced actions not both 2-transitive")

    if rep.induced_on_block_type == "affine":
        rep.prime = _prime_of(info_b.socle.order())
        L = largest_normal_p_subgroup(K, rep.prime, cap)
        ctx.L = L
        rep.L_order = L.order()
        cent = g.centralizer_of(L.gen_arrays, cap) if L.order() > 1 else g
        rep.centralizer_equals_L = cent.order() == L.order() and L.is_subgroup_of(cent)
    if classify:
        classify_affine_rank3(g, rep, ctx, cap)
    return rep


def regular_normal_subgroups(g: PermGroup, K: PermGroup | None = None, cap=None):
    """Regular normal subgroups among class closures and their joins with K."""
    found = []
    n = g.degree
    cands = [N for _, N in class_closures(g, cap)]
    if K is not None and K.order() > 1:
        cands += [join([N, K], n) for N in list(cands)]
    for N in cands:
        if N.order() != n or not N.is_regular():
            continue
        if any(M.order() == N.order() and N.is_subgroup_of(M) for M in found):
            continue
        found.append(N)
    return found


def _exhaustive_regular_normals(g: PermGroup):
    from rank3kit.group import subgroup_from_members
    from rank3kit.oracles import normal_subgroups_of_perm_group

    E, normals = normal_subgroups_of_perm_group(g.gen_arrays, g.degree, 2000)
    out = []
    for members in normals:
        if len(members) == g.degree:
            N = subgroup_from_members(g.degree, E, members)
            if N.is_regular():
                out.append(N)
    return out


def classify_affine_rank3(g: PermGroup, rep: Rank3Report = None, ctx: _Context = None, cap=None):
    """Fill rep.affine_rank3_class and rep.evidence; returns the class tag."""
    if rep is None:
        rep = analyze(g, cap, classify=False)
        ctx = rep._ctx
    ev = rep.evidence
    if rep.rank != 3 or rep.block_size is None:
        rep.notes.append("classification needs a rank 3 imprimitive group")
        ev["scope"] = "not a rank 3 imprimitive group"
        rep.affine_rank3_class = "not-applicable"
        return rep.affine_rank3_class
    if rep.induced_on_block_type != "affine":
        ev["scope"] = "out of scope: block action is not affine"
        rep.affine_rank3_class = "not-applicable"
        return rep.affine_rank3_class
    ev["scope"] = "rank 3, imprimitive, affine block action"

    # (C)
    ev["C_KB_transitive_on_other_block"] = bool(rep.K_pointwise_B_transitive_on_other)

    # (A)
    flags = rep.flags
    almost_simple_top = rep.block_group_type == "almost-simple"
    ev["A_innately_transitive"] = flags["innately_transitive"]
    ev["A_semiprimitive_K_nontrivial_top_almost_simple"] = bool(
        flags["semiprimitive"] and rep.kernel_order > 1 and almost_simple_top)
    clause_a = ev["A_innately_transitive"] or ev["A_semiprimitive_K_nontrivial_top_almost_simple"]

    # (B)
    clause_b = False
    regs = regular_normal_subgroups(g, ctx.K, cap)
    if not regs and g.order() <= 2000:
        regs = _exhaustive_regular_normals(g)
        ev["B_search"] = "exhaustive normal subgroup search"
    else:
        ev["B_search"] = "class closures and joins with K"
    ev["B_regular_normal_orders"] = [N.order() for N in regs]
    ev["B_aut_orbit_counts"] = []
    for N in regs:
        if N.order() > AUT_ORDER_CAP:
            ev["B_aut_orbit_counts"].append(None)
            ev.setdefault("B_capacity", []).append(f"|N| = {N.order()} above {AUT_ORDER_CAP}")
            continue
        res = automorphism_orbit_count(SmallGroupTable.from_perm_group(N))
        ev["B_aut_orbit_counts"].append(res.orbit_count)
        if res.orbit_count <= 3 and not clause_b:
            clause_b = True
            ev["B_regular_normal_tag"] = res.tag
            ev["B_aut_order"] = res.aut_order
            ev["B_orbit_sizes"] = res.orbit_sizes
    ev["B_regular_normal_with_at_most_3_aut_orbits"] = clause_b

    # (D) forensics
    KB_nontrivial = rep.K_pointwise_B_order > 1
    ev["D_KB_nontrivial_intransitive"] = bool(KB_nontrivial and not rep.K_pointwise_B_transitive_on_other)
    frob, wit = (False, None)
    if ev["D_KB_nontrivial_intransitive"] and rep.kernel_order <= 2000:
        frob, wit = is_frobenius_with_cyclic_complement(ctx.K, rep.prime)
    d = round(np.log(rep.block_size) / np.log(rep.prime)) if rep.prime else None
    ev["D_K_frobenius_cyclic_complement"] = frob
    ev["D_frobenius_witness"] = list(wit) if wit else None
    ev["D_a_greater_than_d"] = bool(wit and wit[0] > d)
    L_elab = ctx.L is not None and ctx.L.order() > 1 and ctx.L.is_abelian() and all(
        (x**rep.prime).is_identity() for x in ctx.L.generators)
    ev["D_L_elementary_abelian_self_centralizing"] = bool(L_elab and rep.centralizer_equals_L)
    clause_d = (ev["D_KB_nontrivial_intransitive"] and frob and ev["D_a_greater_than_d"]
                and ev["D_L_elementary_abelian_self_centralizing"])

    # first matching clause in listing order; all four stay in the evidence
    if clause_a:
        tag = "A"
    elif clause_b:
        tag = "B"
    elif ev["C_KB_transitive_on_other_block"]:
        tag = "C"
    elif clause_d:
        tag = "D"
    else:
        tag = "unmatched"
    rep.affine_rank3_class = tag
    return tag


def _choose_system(g: PermGroup, bs: BlockSystem | None):
    if bs is not None:
        return bs
    if g.rank() == 3:
        systems = nontrivial_block_systems_rank3(g)
    else:
        systems = nontrivial_block_systems(g)
    for s in systems:
        _, _, _, _, _, on_blocks, on_block = block_data(g, s)
        if _is_2transitive(on_blocks) and _is_2transitive(on_block):
            return s
    raise HypothesisError("no block system with 2-transitive induced actions")


def two_block_check(g: PermGroup, bs: BlockSystem | None = None) -> dict:
    """Two-block stabilizer transitive on B x B', point stabilizer transitive on
    the other blocks, and |G_{B,B'} : G_{b,b'}| = |B|^2."""
    if g.rank() != 3:
        raise HypothesisError(f"rank is {g.rank()}, not 3")
    bs = _choose_system(g, bs)
    act = BlockActions(g, bs)
    b0 = bs.block_of[0]
    b1 = _other_block(bs, b0)
    B, B1 = sorted(bs.parts[b0]), sorted(bs.parts[b1])
    GBB = act.setwise_stabilizer([b0, b1])
    # orbit of (beta, beta') on B x B'
    seen = {(B[0], B1[0])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x, y in frontier:
            for a in GBB.gen_arrays:
                im = (int(a[x]), int(a[y]))
                if im not in seen:
                    seen.add(im)
                    nxt.append(im)
        frontier = nxt
    part_i = len(seen) == len(B) * len(B1)
    Gb = g.stabilizer(B[0])
    # G_beta acts on blocks; check transitivity on the rest
    rest = set(range(bs.block_count)) - {b0}
    orb = {b1}
    todo = [b1]
    while todo:
        b = todo.pop()
        for a in Gb.gen_arrays:
            c = bs.block_of[int(a[bs.parts[b][0]])]
            if c not in orb:
                orb.add(c)
                todo.append(c)
    part_ii = orb == rest
    Gbb = g.pointwise_stabilizer([B[0], B1[0]])
    index = GBB.order() // Gbb.order()
    return {"i": part_i, "ii": part_ii, "index": index, "block_size_squared": len(B) ** 2,
            "index_ok": index == len(B) ** 2 and GBB.order() % Gbb.order() == 0,
            "ok": part_i and part_ii and index == len(B) ** 2}


def pointwise_kernel_check(g: PermGroup, bs: BlockSystem | None = None) -> dict:
    """K_(B) transitive on a second block; if so the rank must be 3."""
    g.require_transitive()
    bs = _choose_system(g, bs)
    act = BlockActions(g, bs)
    b0 = bs.block_of[0]
    b1 = _other_block(bs, b0)
    KB = act.pointwise_block_kernel(b0)
    other = sorted(bs.parts[b1])
    transitive = set(KB.orbit(other[0])) == set(other)
    out = {"KB_order": KB.order(), "KB_transitive_on_other": transitive, "rank": None}
    if transitive:
        out["rank"] = g.rank()
        if out["rank"] != 3:
            raise AssertionError(f"K_(B) transitive on B' but rank is {out['rank']}")
    return out
