"""Normal-structure predicates for transitive permutation groups.

Every normal subgroup is generated by the conjugacy classes it contains, so
the normal closures of single class representatives carry all the
information needed here:

* a group is semiprimitive iff each such closure is transitive or
  semiregular (an intransitive, non-semiregular normal N contains a
  non-identity element with a fixed point, and the closure of that element
  sits inside N, so it is intransitive and not semiregular either);
* the minimal normal subgroups are exactly the minimal closures;
* O_p is the join of the closures that are p-groups.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from rank3kit.blocks import minimal_block_system
from rank3kit.errors import HypothesisError
from rank3kit.group import PermGroup, normal_closure_in
from rank3kit.numtheory import is_prime, prime_factors


@dataclass(frozen=True)
class StructureFlags:
    semiregular: bool
    semiprimitive: bool
    quasiprimitive: bool
    innately_transitive: bool
    primitive: bool

    def as_dict(self):
        return asdict(self)


def is_semiregular(h: PermGroup, n=None) -> bool:
    if n is not None and n != h.degree:
        raise ValueError(f"group acts on {h.degree} points, not {n}")
    return h.is_semiregular()


def class_closures(g: PermGroup, cap=None):
    """Normal closures of the non-identity class representatives.

    Returned as (representative, closure) pairs, deduplicated by subgroup.
    """
    if "class_closures" in g._cache:
        return g._cache["class_closures"]
    reps = g.conjugacy_class_representatives(cap)
    out = []
    for x in reps:
        if x.is_identity():
            continue
        dup = False
        N = normal_closure_in(g.gen_arrays, [x.array], g.degree)
        for _, M in out:
            if M.order() == N.order() and N.is_subgroup_of(M):
                dup = True
                break
        if not dup:
            out.append((x, N))
    g._cache["class_closures"] = out
    return out


def _closure_is_transitive(N: PermGroup, n):
    return len(N.orbit(0)) == n


def is_semiprimitive(g: PermGroup, cap=None) -> bool:
    g.require_transitive()
    for _, N in class_closures(g, cap):
        if not (_closure_is_transitive(N, g.degree) or N.is_semiregular()):
            return False
    return True


def is_quasiprimitive(g: PermGroup, cap=None) -> bool:
    g.require_transitive()
    return all(_closure_is_transitive(N, g.degree) for _, N in class_closures(g, cap))


def minimal_normal_subgroups(g: PermGroup, cap=None):
    closures = [N for _, N in class_closures(g, cap)]
    closures.sort(key=lambda N: N.order())
    # closures are already distinct, so N is minimal iff no smaller one sits inside it
    return [N for N in closures
            if not any(M.order() < N.order() and M.is_subgroup_of(N) for M in closures)]


def is_innately_transitive(g: PermGroup, cap=None) -> bool:
    g.require_transitive()
    return any(_closure_is_transitive(M, g.degree) for M in minimal_normal_subgroups(g, cap))


def is_primitive(g: PermGroup) -> bool:
    g.require_transitive()
    if g.degree <= 2:
        return True
    for x in range(1, g.degree):
        if minimal_block_system(g, (0, x)).block_count != 1:
            return False
    return True


def structure_flags(g: PermGroup, cap=None) -> StructureFlags:
    flags = StructureFlags(
        semiregular=g.is_semiregular(),
        semiprimitive=is_semiprimitive(g, cap),
        quasiprimitive=is_quasiprimitive(g, cap),
        innately_transitive=is_innately_transitive(g, cap),
        primitive=is_primitive(g),
    )
    chain = [flags.primitive, flags.quasiprimitive, flags.innately_transitive, flags.semiprimitive]
    for a, b in zip(chain, chain[1:]):
        if a and not b:
            raise AssertionError(f"implication chain broken: {flags}")
    return flags


def join(groups, degree):
    gens = [a for G in groups for a in G.gen_arrays]
    return PermGroup(gens, degree=degree)


def socle(g: PermGroup, cap=None) -> PermGroup:
    mins = minimal_normal_subgroups(g, cap)
    return join(mins, g.degree)


@dataclass
class SocleInfo:
    socle: PermGroup
    type: str  # affine | almost-simple | other
    minimal_normals: list


def socle_and_type(g: PermGroup, require_2transitive=False, cap=None) -> SocleInfo:
    g.require_transitive()
    if require_2transitive and g.rank() != 2:
        raise HypothesisError(f"rank is {g.rank()}, not 2")
    mins = minimal_normal_subgroups(g, cap)
    soc = join(mins, g.degree)
    if soc.is_abelian() and soc.is_regular() and len(order_primes(soc)) == 1:
        kind = "affine"
    elif len(mins) == 1 and not soc.is_abelian():
        cent = g.centralizer_of(soc.gen_arrays, cap)
        kind = "almost-simple" if cent.order() == 1 else "other"
    else:
        kind = "other"
    return SocleInfo(soc, kind, mins)


def is_p_group_order(order, p):
    while order % p == 0:
        order //= p
    return order == 1


def largest_normal_p_subgroup(g: PermGroup, p: int, cap=None) -> PermGroup:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if g.order() == 1:
        return PermGroup([], degree=g.degree)
    parts = [N for _, N in class_closures(g, cap) if is_p_group_order(N.order(), p)]
    O = join(parts, g.degree)
    if not is_p_group_order(O.order(), p):
        raise AssertionError("join of normal p-subgroups is not a p-group")
    return O


def order_primes(g: PermGroup):
    return prime_factors(g.order())
