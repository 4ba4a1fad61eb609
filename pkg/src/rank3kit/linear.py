"""Linear and semilinear groups on vectors and on scalar-orbit quotients.

Vectors are row vectors acted on from the right, ``v -> v M``; a semilinear
map is a pair (M, j) sending v to (v M) with every coordinate raised to the
p^j-th power. Vector index ``sum a_i q^(d-1-i)``; nonzero vector k is
point k - 1.

The quotient domain ``Delta`` consists of the orbits of C = <lambda^r> (scalars)
on nonzero vectors, numbered by their least vector index. Groups between the
images of SL and GammaL are described by a *selector*: coset tags
``delta^i phi^j`` adjoined to the image of SL, where delta = diag(lambda, 1, ...)
and phi is coordinatewise Frobenius.

The quotient GammaLbar / SLbar is Q = Z_m x| Z_f with m = gcd(q - 1, r d):
delta generates Z_m (through the determinant) and phi^-1 delta phi = delta^p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from math import gcd, prod

import numpy as np

from rank3kit.errors import CapacityError, HypothesisError
from rank3kit.field import FiniteField, field_of_order
from rank3kit.group import PermGroup
from rank3kit.numtheory import is_prime, is_primitive_prime_divisor

POINT_CAP = 10**4


# classical orders


def order_gl(d, q):
    return prod(q**d - q**i for i in range(d))


def order_sl(d, q):
    return order_gl(d, q) // (q - 1)


def classical_order(kind, d, q):
    f = field_of_order(q).f
    base = {"SL": order_sl, "GL": order_gl, "SigmaL": order_sl, "GammaL": order_gl}[kind](d, q)
    return base * (f if kind in ("SigmaL", "GammaL") else 1)


# semilinear maps as permutations of all vectors


def transvections(F: FiniteField, d):
    """Elementary matrices I + a E_{i,i+1} and I + a E_{i+1,i}, a over an F_p-basis."""
    mats = []
    for i in range(d - 1):
        for a in F.prime_field_basis():
            for (r, c) in ((i, i + 1), (i + 1, i)):
                M = np.eye(d, dtype=np.int64)
                M[r, c] = a
                mats.append(M)
    return mats


def delta_matrix(F: FiniteField, d, power=1):
    M = np.eye(d, dtype=np.int64)
    M[0, 0] = F.power_of_primitive(power)
    return M


def semilinear_on_vectors(F: FiniteField, d, M=None, frob=0, V=None):
    """Index permutation of all q^d vectors under v -> (v M)^(phi^frob)."""
    if V is None:
        V = F.vector_table(d)
    W = V if M is None else F.vec_times_matrix(V, M)
    if frob:
        W = F.frob(W, frob)
    return F.vector_index(W)


def _drop_zero(perm):
    return perm[1:] - 1


def linear_group_generators(kind, d, F: FiniteField, V=None):
    """Vector-index permutations generating SL, GL, SigmaL or GammaL."""
    if kind not in ("SL", "GL", "SigmaL", "GammaL"):
        raise ValueError(f"unknown kind {kind!r}")
    if d < 1:
        raise ValueError("dimension must be positive")
    if V is None:
        V = F.vector_table(d)
    gens = [semilinear_on_vectors(F, d, M, 0, V) for M in transvections(F, d)]
    if kind in ("GL", "GammaL") and F.q > 2:
        gens.append(semilinear_on_vectors(F, d, delta_matrix(F, d), 0, V))
    if kind in ("SigmaL", "GammaL") and F.f > 1:
        gens.append(semilinear_on_vectors(F, d, None, 1, V))
    return gens


def linear_group_on_vectors(kind, d, F: FiniteField) -> PermGroup:
    npts = F.q**d - 1
    if npts > POINT_CAP:
        raise CapacityError("point_cap", POINT_CAP, f"{npts} vectors")
    if d < 2:
        raise HypothesisError("dimension must be at least 2")
    gens = [_drop_zero(g) for g in linear_group_generators(kind, d, F)]
    return PermGroup(gens, degree=npts, name=f"{kind}_{d}({F.q}) on vectors")


# the quotient Q = GammaLbar / SLbar


@dataclass(frozen=True)
class CosetQuotient:
    m: int
    f: int
    p: int

    def elements(self):
        return [(i, j) for j in range(self.f) for i in range(self.m)]

    def mul(self, a, b):
        i1, j1 = a
        i2, j2 = b
        pinv = pow(self.p, -j1, self.m) if self.m > 1 else 0
        return ((i1 + i2 * pinv) % self.m, (j1 + j2) % self.f)

    def normalize(self, tag):
        return (tag[0] % self.m, tag[1] % self.f)

    def generated(self, tags):
        H = {(0, 0)}
        frontier = [(0, 0)]
        tags = [self.normalize(t) for t in tags]
        while frontier:
            nxt = []
            for h in frontier:
                for t in tags:
                    y = self.mul(h, t)
                    if y not in H:
                        H.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(H)

    def subgroups(self):
        """Every subgroup with its lexicographically least generating set.

        Subgroups of a metacyclic group are metacyclic, hence 2-generated,
        so closing all pairs finds them all.
        """
        els = sorted(self.elements())
        found = {}
        cands = [()] + [(a,) for a in els] + [(a, b) for a in els for b in els if a < b]
        for tags in cands:
            H = self.generated(tags)
            if H not in found:
                found[H] = tags
        return sorted(((tags, H) for H, tags in found.items()), key=lambda t: (len(t[1]), t[0]))


# family specification


_TAG_RE = re.compile(r"^(?:delta(?:\^(-?\d+))?)?(?:\*)?(?:phi(?:\^(-?\d+))?)?$")


def parse_tag(text):
    text = text.strip().replace(" ", "")
    if text in ("1", "id"):
        return (0, 0)
    m = _TAG_RE.match(text)
    if not m or not text:
        raise ValueError(f"bad selector tag {text!r}")
    i = j = 0
    if text.startswith("delta"):
        i = int(m.group(1)) if m.group(1) is not None else 1
    if "phi" in text:
        j = int(m.group(2)) if m.group(2) is not None else 1
    return (i, j)


def format_tag(tag):
    i, j = tag
    parts = []
    if i:
        parts.append("delta" if i == 1 else f"delta^{i}")
    if j:
        parts.append("phi" if j == 1 else f"phi^{j}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class FamilySpec:
    d: int
    q: int
    r: int
    selector: tuple = ()
    F: FiniteField = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.F is None:
            object.__setattr__(self, "F", field_of_order(self.q))
        if self.d < 2:
            raise ValueError("d must be at least 2")
        if self.r < 2:
            raise ValueError("r must be at least 2")
        if (self.q - 1) % self.r:
            raise ValueError(f"r={self.r} does not divide q-1={self.q - 1}")
        tags = tuple(sorted({(i % (self.q - 1), j % self.F.f) for i, j in self.selector} - {(0, 0)}))
        object.__setattr__(self, "selector", tags)

    @property
    def p(self):
        return self.F.p

    @property
    def f(self):
        return self.F.f

    @property
    def c_order(self):
        return (self.q - 1) // self.r

    @property
    def delta_size(self):
        return self.r * (self.q**self.d - 1) // (self.q - 1)

    def quotient(self):
        return CosetQuotient(gcd(self.q - 1, self.r * self.d), self.f, self.p)

    def image_in_quotient(self):
        return self.quotient().generated(self.selector)

    def order_slbar(self):
        return order_sl(self.d, self.q) // gcd(self.d, self.c_order)

    def predicted_order(self):
        return self.order_slbar() * len(self.image_in_quotient())

    def predicted_order_in_glbar(self):
        H = self.image_in_quotient()
        return self.order_slbar() * sum(1 for (i, j) in H if j == 0)

    def label(self):
        gens = ",".join(format_tag(t) for t in self.selector) or "none"
        return f"d={self.d},q={self.q},r={self.r},gens={gens}"

    @classmethod
    def parse(cls, text):
        """Parse ``d=3,q=4,r=3,gens=phi`` (extra comma-separated tags continue gens)."""
        vals = {}
        tags = []
        in_gens = False
        for tok in text.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if "=" in tok:
                key, val = tok.split("=", 1)
                key = key.strip()
                in_gens = key == "gens"
                if in_gens:
                    if val.strip() != "none":
                        tags.append(parse_tag(val))
                elif key in ("d", "q", "r"):
                    vals[key] = int(val)
                else:
                    raise ValueError(f"unknown family key {key!r}")
            elif in_gens:
                if tok != "none":
                    tags.append(parse_tag(tok))
            else:
                raise ValueError(f"cannot parse {tok!r}")
        missing = {"d", "q", "r"} - set(vals)
        if missing:
            raise ValueError(f"missing keys: {sorted(missing)}")
        return cls(vals["d"], vals["q"], vals["r"], tuple(tags))

    @classmethod
    def named(cls, d, q, r, kind):
        """Selector for one of SL, GL, SigmaL, GammaL (images in Delta)."""
        F = field_of_order(q)
        tags = {"SL": (), "GL": ((1, 0),), "SigmaL": ((0, 1),), "GammaL": ((1, 0), (0, 1))}[kind]
        if F.f == 1:
            tags = tuple(t for t in tags if t[1] == 0)
        return cls(d, q, r, tags)


# the Delta action


class DeltaDomain:
    """C-orbits on nonzero vectors, each named by its least vector index."""

    def __init__(self, F: FiniteField, d, r):
        self.F, self.d, self.r = F, d, r
        V = F.vector_table(d)
        self.V = V
        idx = np.arange(F.q**d)
        canon = idx.copy()
        c = F.power_of_primitive(r)
        cur = V
        for _ in range((F.q - 1) // r - 1):
            cur = F.mul(cur, c)
            canon = np.minimum(canon, F.vector_index(cur))
        self.canon = canon
        reps = np.unique(canon[1:])
        self.reps = reps
        pos = np.full(F.q**d, -1, dtype=np.intp)
        pos[reps] = np.arange(len(reps))
        self.point_of_vector = pos[canon]
        self.point_of_vector[0] = -1

    @property
    def size(self):
        return len(self.reps)

    def induced(self, vec_perm):
        return self.point_of_vector[vec_perm[self.reps]]

    def point(self, vector):
        return int(self.point_of_vector[int(self.F.vector_index(np.asarray(vector)))])


def tag_on_vectors(F, d, tag, V=None):
    """Vector permutation of delta^i phi^j (first delta^i, then phi^j)."""
    i, j = tag
    return semilinear_on_vectors(F, d, delta_matrix(F, d, i) if i else None, j, V)


def delta_action(spec: FamilySpec, domain: DeltaDomain = None) -> PermGroup:
    if spec.delta_size > POINT_CAP:
        raise CapacityError("point_cap", POINT_CAP, f"|Delta| = {spec.delta_size}")
    F, d = spec.F, spec.d
    dom = domain or DeltaDomain(F, d, spec.r)
    V = dom.V
    gens = [dom.induced(g) for g in linear_group_generators("SL", d, F, V)]
    for tag in spec.selector:
        gens.append(dom.induced(tag_on_vectors(F, d, tag, V)))
    G = PermGroup(gens, degree=dom.size, name=spec.label())
    G.delta_domain = dom
    return G


def glbar_part(spec: FamilySpec) -> FamilySpec:
    """Spec of G intersected with GLbar: SLbar plus delta^i for the i it contains."""
    H = spec.image_in_quotient()
    m = spec.quotient().m
    lin = [i for (i, j) in H if j == 0 and i]
    if not lin:
        return FamilySpec(spec.d, spec.q, spec.r, ())
    g = 0
    for i in lin:
        g = gcd(g, i)
    g = gcd(g, m)
    return FamilySpec(spec.d, spec.q, spec.r, ((g, 0),))


def scalar_check(spec: FamilySpec, domain: DeltaDomain = None):
    """C acts trivially on Delta; lambda acts as a fixed-point-free map of order r."""
    F = spec.F
    dom = domain or DeltaDomain(F, spec.d, spec.r)
    c = semilinear_on_vectors(F, spec.d, np.eye(spec.d, dtype=np.int64) * F.power_of_primitive(spec.r), 0, dom.V)
    lam = semilinear_on_vectors(F, spec.d, np.eye(spec.d, dtype=np.int64) * F.primitive, 0, dom.V)
    c_ok = np.array_equal(dom.induced(c), np.arange(dom.size))
    L = dom.induced(lam)
    cur = np.arange(dom.size)
    order = 0
    while True:
        cur = L[cur]
        order += 1
        if np.array_equal(cur, np.arange(dom.size)):
            break
    return c_ok, order, bool((L != np.arange(dom.size)).all())


# predicted suborbits


def _vector_points(F, d, vectors):
    return {int(x) - 1 for x in F.vector_index(np.asarray(vectors))}


def expected_suborbits(spec_or_field, which, d=None):
    """Predicted orbits of a point stabilizer, as a sorted list of point sets.

    which:
      "GL-vectors"  GL on nonzero vectors, stabilizer of v = e_d
      "SL-vectors"  SL on nonzero vectors (d = 2 splits into affine lines)
      "GLbar"       GLbar on Delta (also SLbar when d >= 3)
      "SLbar-d2"    SLbar on Delta with d = 2, r = 2, p odd
      "GammaLbar"   GammaLbar on Delta when r is a ppd of p^(r-1) - 1
      "generic"     the SLbar orbits: GLbar shape if d >= 3, else SLbar-d2
    The base point is the vector e_d (point 0 on vectors and on Delta).
    """
    if which in ("GL-vectors", "SL-vectors"):
        F = spec_or_field.F if isinstance(spec_or_field, FamilySpec) else spec_or_field
        d = spec_or_field.d if isinstance(spec_or_field, FamilySpec) else d
        q = F.q
        V = F.vector_table(d)
        v = np.zeros(d, dtype=np.int64)
        v[-1] = 1
        w = np.zeros(d, dtype=np.int64)
        w[-2] = 1
        sing = [_vector_points(F, d, [F.mul(v, F.power_of_primitive(i))]) for i in range(1, q)]
        if which == "SL-vectors" and d == 2:
            lines = []
            for k in range(1, q):
                lw = F.mul(w, F.power_of_primitive(k))
                lines.append(_vector_points(F, d, [F.add(lw, F.mul(v, mu)) for mu in range(q)]))
            parts = sing + lines
        else:
            span = _vector_points(F, d, [F.mul(v, a) for a in range(q)])
            rest = set(range(q**d - 1)) - span
            parts = sing + [rest]
        return _sorted_parts(parts)

    spec = spec_or_field
    F, d, r, q = spec.F, spec.d, spec.r, spec.q
    if which == "generic":
        which = "GLbar" if d >= 3 else "SLbar-d2"
    dom = DeltaDomain(F, d, r)
    v = np.zeros(d, dtype=np.int64)
    v[-1] = 1
    w = np.zeros(d, dtype=np.int64)
    w[-2] = 1
    lam = [dom.point(F.mul(v, F.power_of_primitive(ell))) for ell in range(1, r + 1)]
    line = {dom.point(F.mul(v, a)) for a in range(1, q)}
    rest = set(range(dom.size)) - line
    if which == "GLbar":
        return _sorted_parts([{x} for x in lam] + [rest])
    if which == "GammaLbar":
        if not (is_prime(r) and is_primitive_prime_divisor(r, F.p, r - 1)):
            raise HypothesisError("r is not a primitive prime divisor of p^(r-1) - 1")
        return _sorted_parts([{lam[-1]}, set(lam[:-1]), rest])
    if which == "SLbar-d2":
        if not (d == 2 and r == 2 and F.p % 2 == 1):
            raise HypothesisError("SLbar-d2 needs d = 2, r = 2 and odd p")
        odd, even = set(), set()
        for k in range(1, q):
            lw = F.mul(w, F.power_of_primitive(k))
            pts = {dom.point(F.add(lw, F.mul(v, mu))) for mu in range(q)}
            (odd if k % 2 else even).update(pts)
        return _sorted_parts([{lam[0]}, {lam[1]}, odd, even])
    raise ValueError(f"unknown suborbit description {which!r}")


def _sorted_parts(parts):
    parts = [frozenset(p) for p in parts if p]
    return sorted(parts, key=lambda s: (len(s), min(s)))


def computed_suborbits(G: PermGroup, x=0):
    return _sorted_parts(G.stabilizer(x).orbits())


# the rank 3 arithmetic


@dataclass
class PredicateResult:
    rank3: bool | None
    semiprimitive_not_innately: bool | None
    scope: str
    reasons: dict
    order: int = 0
    order_in_glbar: int = 0


def not_innately_condition(d, q, r):
    """r divides (d, q-1) but not (q-1)/(d, q-1)."""
    g = gcd(d, q - 1)
    return g % r == 0 and ((q - 1) // g) % r != 0


def rank3_family_predicate(spec: FamilySpec, G: PermGroup = None, G_gl: PermGroup = None) -> PredicateResult:
    """Arithmetic rank-3 verdict from the certified orders of G and G meet GLbar."""
    d, q, r, p, f = spec.d, spec.q, spec.r, spec.p, spec.f
    if G is None:
        G = delta_action(spec)
    if G_gl is None:
        G_gl = delta_action(glbar_part(spec))
    if not G_gl.is_subgroup_of(G):
        raise AssertionError("G meet GLbar is not inside G")
    order, order_gl = G.order(), G_gl.order()
    reasons = {"order": order, "order_in_glbar": order_gl}
    ppd = is_prime(r) and is_primitive_prime_divisor(r, p, r - 1)
    reasons["r_is_ppd_of_p^(r-1)-1"] = ppd
    not_innately = not_innately_condition(d, q, r)
    reasons["r_divides_(d,q-1)_and_not_(q-1)/(d,q-1)"] = not_innately
    if d >= 3:
        g = gcd(r - 1, f * order_gl // order)
        reasons["gcd(r-1,f|G^GL|/|G|)"] = g
        rank3 = ppd and g == 1
        scope = "d>=3"
    elif d == 2 and r == 2 and p % 2 == 1 and q >= 5:
        # The literal condition is "G not inside SigmaLbar". When q = 1 (mod 4)
        # the group <SLbar, delta^2> escapes SigmaLbar yet has rank 4; the
        # orbit fusion needs some delta^i phi^j with i odd, i.e. G outside the
        # index-2 subgroup <SLbar, delta^2, phi>.
        sigma = delta_action(FamilySpec.named(d, q, r, "SigmaL"))
        even = delta_action(FamilySpec(d, q, r, ((2, 0), (0, 1))))
        reasons["inside_SigmaLbar"] = G.is_subgroup_of(sigma)
        reasons["inside_<SLbar,delta^2,phi>"] = G.is_subgroup_of(even)
        rank3 = not reasons["inside_<SLbar,delta^2,phi>"]
        scope = "(d,r)=(2,2), p odd"
    else:
        reasons["note"] = "outside the d>=3 and (d,r)=(2,2) criteria"
        return PredicateResult(None, None, "outside", reasons, order, order_gl)
    return PredicateResult(rank3, bool(rank3 and not_innately), scope, reasons, order, order_gl)


# scan


@dataclass
class ScanRow:
    spec: str
    degree: int
    order: int
    predicted_order: int
    rank: int
    subdegrees: list
    predicate: bool | None
    scope: str
    agree: bool | None


def family_grid(dvals=(2, 3), qvals=(3, 4, 5, 7, 8, 9)):
    for d in dvals:
        for q in qvals:
            for r in range(2, q):
                if (q - 1) % r == 0:
                    yield d, q, r


def scan_family(d, q, r):
    """Every subgroup of Q over SLbar for one (d, q, r)."""
    rows = []
    F = field_of_order(q)
    dom = DeltaDomain(F, d, r)
    base = FamilySpec(d, q, r, ())
    groups = {}

    def build(spec):
        key = spec.image_in_quotient()
        if key not in groups:
            groups[key] = delta_action(spec, dom)
        return groups[key]

    for tags, H in base.quotient().subgroups():
        spec = FamilySpec(d, q, r, tags)
        G = build(spec)
        G_gl = build(glbar_part(spec))
        pred = rank3_family_predicate(spec, G, G_gl) if d >= 3 or (r == 2 and F.p % 2 and q >= 5) else \
            PredicateResult(None, None, "outside", {"note": "outside the d>=3 and (d,r)=(2,2) criteria"},
                            G.order(), G_gl.order())
        rank = G.rank()
        agree = None if pred.rank3 is None else (pred.rank3 == (rank == 3))
        rows.append(ScanRow(spec.label(), G.degree, G.order(), spec.predicted_order(), rank,
                            G.subdegrees(), pred.rank3, pred.scope, agree))
    return rows


@dataclass
class SuborbitCheck:
    label: str
    which: str
    expected: list
    computed: list

    @property
    def ok(self):
        return self.expected == self.computed


def suborbit_checks(d, q, r=None):
    """Predicted against computed stabilizer orbits for one grid cell.

    With r None the vector-level descriptions are checked, otherwise the
    Delta-level ones that apply to (d, q, r).
    """
    F = field_of_order(q)
    out = []

    def record(label, which, pred, G):
        out.append(SuborbitCheck(label, which, [sorted(s) for s in pred],
                                 [sorted(s) for s in computed_suborbits(G)]))

    if r is None:
        for kind, which in (("GL", "GL-vectors"), ("SL", "SL-vectors")):
            G = linear_group_on_vectors(kind, d, F)
            record(f"{kind}_{d}({q}) on vectors", which, expected_suborbits(F, which, d), G)
        return out
    dom = DeltaDomain(F, d, r)
    gl = FamilySpec.named(d, q, r, "GL")
    record(gl.label(), "GLbar", expected_suborbits(gl, "GLbar"), delta_action(gl, dom))
    sl = FamilySpec(d, q, r, ())
    if d >= 3:
        record(sl.label(), "GLbar", expected_suborbits(sl, "GLbar"), delta_action(sl, dom))
    elif r == 2 and F.p % 2:
        record(sl.label(), "SLbar-d2", expected_suborbits(sl, "SLbar-d2"), delta_action(sl, dom))
    if is_prime(r) and is_primitive_prime_divisor(r, F.p, r - 1) and d >= 3:
        gam = FamilySpec.named(d, q, r, "GammaL")
        record(gam.label(), "GammaLbar", expected_suborbits(gam, "GammaLbar"), delta_action(gam, dom))
    return out
