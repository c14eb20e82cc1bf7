"""Cyclotomic-valued class functions on G(F_q) and the finite pull-push
operations on them: ordinary and Harish-Chandra induction/restriction,
coset-space intertwiners between parabolics sharing a Levi, the Springer
function, and group-algebra convolution.

All pull-push sums carry the 1/|stabilizer| weights written out in the
formulas; the identities hc_induce = Ind o infl and the Springer
convolution check pin the normalizations against independent computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import Cyclotomic
from .groups import GroupTable, ParabolicData, subgroup_table

ZERO = Cyclotomic.zero()
ONE = Cyclotomic.one()


@dataclass(frozen=True)
class ClassFunction:
    group: GroupTable
    values: tuple

    def __post_init__(self):
        assert len(self.values) == self.group.num_classes

    def at_class(self, i: int) -> Cyclotomic:
        return self.values[i]

    def at_element(self, g) -> Cyclotomic:
        return self.values[self.group.class_index(g)]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        assert self.group is other.group
        return ClassFunction(self.group, tuple(a + b for a, b in
                                               zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        assert self.group is other.group
        return ClassFunction(self.group, tuple(a - b for a, b in
                                               zip(self.values, other.values)))

    def __mul__(self, scalar) -> "ClassFunction":
        if isinstance(scalar, (int, Fraction)):
            scalar = Cyclotomic.from_rational(scalar)
        return ClassFunction(self.group, tuple(v * scalar for v in self.values))

    __rmul__ = __mul__

    def __neg__(self):
        return self * (-1)

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(v.conjugate() for v in self.values))

    def dual(self) -> "ClassFunction":
        """g -> conj(f(g^{-1})): the transform between the compact-supports
        convention and its dual."""
        inv = self.group.inverse_class
        return ClassFunction(self.group, tuple(
            self.values[inv[i]].conjugate() for i in range(len(self.values))))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def to_json(self):
        return [v.to_json() for v in self.values]


def trivial_character(g: GroupTable) -> ClassFunction:
    return ClassFunction(g, (ONE,) * g.num_classes)


def delta_basis(g: GroupTable) -> list[ClassFunction]:
    out = []
    for i in range(g.num_classes):
        out.append(ClassFunction(g, tuple(
            ONE if j == i else ZERO for j in range(g.num_classes))))
    return out


def identity_indicator(g: GroupTable) -> ClassFunction:
    """Indicator of the identity element: the unit of convolution."""
    ident = g.class_index(g.identity)
    return ClassFunction(g, tuple(
        ONE if j == ident else ZERO for j in range(g.num_classes)))


def regular_character(g: GroupTable) -> ClassFunction:
    ident = g.class_index(g.identity)
    return ClassFunction(g, tuple(
        Cyclotomic.from_rational(g.order) if j == ident else ZERO
        for j in range(g.num_classes)))


# ---------------------------------------------------------------------------
# pairings

def inner_product(f: ClassFunction, h: ClassFunction) -> Cyclotomic:
    """Bilinear tensor-invariants pairing (1/|G|) sum f(x) h(x): the pairing
    of the Deligne-Lusztig orthogonality theorem, no conjugation."""
    assert f.group is h.group, "group mismatch"
    g = f.group
    acc = ZERO
    for c, a, b in zip(g.classes, f.values, h.values):
        acc = acc + a * b * Fraction(c.size)
    return acc * Fraction(1, g.order)


def inner_product_hermitian(f: ClassFunction, h: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum f(x) conj(h(x)): character-table orthogonality pairing."""
    return inner_product(f, h.conjugate())


# ---------------------------------------------------------------------------
# induction

@lru_cache(maxsize=None)
def _induction_matrix(ambient: GroupTable, sub: GroupTable):
    """counts[i][j] = #{x in G : x^{-1} g_i x in class j of the subgroup}."""
    ops = ambient.ops
    counts = [[0] * sub.num_classes for _ in range(ambient.num_classes)]
    for i, c in enumerate(ambient.classes):
        rep = c.representative
        for xi, x in enumerate(ambient.elements):
            y = ops.mul(ops.mul(ambient.inverses[xi], rep), x)
            j = sub.index.get(y)
            if j is not None:
                counts[i][sub.class_of[j]] += 1
    return counts


def induce(ambient: GroupTable, sub: GroupTable, f: ClassFunction) -> ClassFunction:
    """Ind(f)(g) = (1/|H|) sum over x in G with x^{-1} g x in H of
    f(x^{-1} g x)."""
    assert f.group is sub
    counts = _induction_matrix(ambient, sub)
    w = Fraction(1, sub.order)
    vals = []
    for i in range(ambient.num_classes):
        acc = ZERO
        for j, m in enumerate(counts[i]):
            if m:
                acc = acc + f.values[j] * Fraction(m)
        vals.append(acc * w)
    return ClassFunction(ambient, tuple(vals))


def restrict(sub: GroupTable, f: ClassFunction) -> ClassFunction:
    """Restriction along an inclusion of element lists."""
    g = f.group
    vals = tuple(f.at_element(c.representative) for c in sub.classes)
    return ClassFunction(sub, vals)


# ---------------------------------------------------------------------------
# Harish-Chandra induction and restriction

@lru_cache(maxsize=None)
def _hc_matrix(p: ParabolicData):
    """counts[i][j] = #{x in G : x^{-1} g_i x in P, Levi class of the
    projection = j}."""
    g = p.group
    ops = g.ops
    pset = set(p.P_points)
    counts = [[0] * p.levi.num_classes for _ in range(g.num_classes)]
    for i, c in enumerate(g.classes):
        rep = c.representative
        for xi, x in enumerate(g.elements):
            y = ops.mul(ops.mul(g.inverses[xi], rep), x)
            if y in pset:
                counts[i][p.levi.class_index(p.project(y))] += 1
    return counts


@lru_cache(maxsize=None)
def parabolic_subgroup_table(p: ParabolicData) -> GroupTable:
    return subgroup_table(p.group, p.P_points, name=p.name)


def inflate(p: ParabolicData, f: ClassFunction) -> ClassFunction:
    """Pull back along P -> M = P/N."""
    assert f.group is p.levi
    pt = parabolic_subgroup_table(p)
    vals = tuple(f.at_element(p.project(c.representative)) for c in pt.classes)
    return ClassFunction(pt, vals)


def hc_induce(p: ParabolicData, f: ClassFunction, check: bool = False) -> ClassFunction:
    """(hc_induce f)(g) = (1/|P|) sum over x with x^{-1} g x in P of
    f(pi(x^{-1} g x)).  With check=True also verifies the identity
    hc_induce = Ind o infl by the independent induced-character scan."""
    assert f.group is p.levi, "f must live on the Levi"
    g = p.group
    counts = _hc_matrix(p)
    w = Fraction(1, len(p.P_points))
    vals = []
    for i in range(g.num_classes):
        acc = ZERO
        for j, m in enumerate(counts[i]):
            if m:
                acc = acc + f.values[j] * Fraction(m)
        vals.append(acc * w)
    out = ClassFunction(g, tuple(vals))
    if check:
        alt = induce(g, parabolic_subgroup_table(p), inflate(p, f))
        assert out == alt, "hc_induce disagrees with Ind o infl"
    return out


def hc_restrict(p: ParabolicData, f: ClassFunction) -> ClassFunction:
    """(hc_restrict f)(m) = (1/|N(P)|) sum over u in N(P) of f(m u)."""
    assert f.group is p.group
    ops = p.group.ops
    w = Fraction(1, len(p.N_points))
    vals = []
    for c in p.levi.classes:
        m = c.representative
        acc = ZERO
        for u in p.N_points:
            acc = acc + f.at_element(ops.mul(m, u))
        vals.append(acc * w)
    return ClassFunction(p.levi, tuple(vals))


# ---------------------------------------------------------------------------
# coset spaces and the Howlett-Lehrer intertwiner

class CosetSpace:
    """G(F_q)/N(P)(F_q) with canonical least-element representatives."""

    def __init__(self, p: ParabolicData):
        self.parabolic = p
        g = p.group
        ops = g.ops
        coset_of = [-1] * g.order
        reps = []
        for i, x in enumerate(g.elements):
            if coset_of[i] != -1:
                continue
            cid = len(reps)
            members = sorted(g.index[ops.mul(x, u)] for u in p.N_points)
            for m in members:
                coset_of[m] = cid
            reps.append(g.elements[members[0]])
        self.reps = reps
        self.coset_of = coset_of
        assert len(reps) == g.order // len(p.N_points)

    def __len__(self):
        return len(self.reps)

    def index_of(self, x) -> int:
        return self.coset_of[self.parabolic.group.index[x]]


@dataclass(frozen=True)
class CosetSpaceFunction:
    space: CosetSpace
    values: tuple

    def __post_init__(self):
        assert len(self.values) == len(self.space)


@lru_cache(maxsize=None)
def coset_space(p: ParabolicData) -> CosetSpace:
    return CosetSpace(p)


def intertwiner_matrix(p1: ParabolicData, p2: ParabolicData):
    """Matrix (rows: target cosets of N(P2), cols: source cosets of N(P1))
    of the pull-push map along G/(N1 cap N2): (Tf)(y) =
    (1/|N1 cap N2|) sum over n in N2(F_q) of f(y n N1).  Exact Fractions."""
    g = p1.group
    assert p2.group is g, "parabolics in different groups"
    assert set(p1.levi.elements) == set(p2.levi.elements), "Levi mismatch"
    x1, x2 = coset_space(p1), coset_space(p2)
    n12 = len(set(p1.N_points) & set(p2.N_points))
    ops = g.ops
    mat = [[0] * len(x1) for _ in range(len(x2))]
    for yi, y in enumerate(x2.reps):
        for n in p2.N_points:
            mat[yi][x1.index_of(ops.mul(y, n))] += 1
    w = Fraction(1, n12)
    return [[Fraction(v) * w for v in row] for row in mat]


def apply_matrix(mat, f: CosetSpaceFunction, target: CosetSpace) -> CosetSpaceFunction:
    vals = []
    for row in mat:
        acc = ZERO
        for c, v in zip(row, f.values):
            if c:
                acc = acc + v * c
        vals.append(acc)
    return CosetSpaceFunction(target, tuple(vals))


def matrix_determinant(mat) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(mat)
    m = [list(map(Fraction, row)) for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


# ---------------------------------------------------------------------------
# Springer function and convolution

@lru_cache(maxsize=None)
def springer_function(g: GroupTable) -> ClassFunction:
    """g -> #{rational Borels containing g}, as a class function."""
    from .groups import borel
    b = borel(g)
    ops = g.ops
    bset = set(b.P_points)
    vals = []
    for c in g.classes:
        rep = c.representative
        cnt = sum(1 for xi, x in enumerate(g.elements)
                  if ops.mul(ops.mul(g.inverses[xi], rep), x) in bset)
        assert cnt % len(b.P_points) == 0
        vals.append(Cyclotomic.from_rational(cnt // len(b.P_points)))
    return ClassFunction(g, tuple(vals))


@lru_cache(maxsize=None)
def springer_sheaf_function(g: GroupTable) -> ClassFunction:
    """Trace function of the Springer sheaf: #{Borels B with g in N(B)}.
    Supported on unipotent classes (g in N(B) forces g unipotent), where it
    agrees with springer_function; zero elsewhere."""
    full = springer_function(g)
    p = g.ops.spec.p
    vals = []
    for c, v in zip(g.classes, full.values):
        o = c.order
        while o % p == 0:
            o //= p
        vals.append(v if o == 1 else ZERO)
    return ClassFunction(g, tuple(vals))


@lru_cache(maxsize=None)
def class_constants(g: GroupTable):
    """a[i][j][k] = #{(a, b) in C_i x C_j : a b = rep_k}."""
    ops = g.ops
    nc = g.num_classes
    a = [[[0] * nc for _ in range(nc)] for _ in range(nc)]
    for k, ck in enumerate(g.classes):
        z = ck.representative
        for i, ci in enumerate(g.classes):
            for ai in ci.members:
                b = ops.mul(g.inverses[ai], z)
                a[i][g.class_of[g.index[b]]][k] += 1
    return a


def convolve(f: ClassFunction, h: ClassFunction) -> ClassFunction:
    """(f * h)(x) = sum over ab = x of f(a) h(b), unnormalized."""
    assert f.group is h.group
    g = f.group
    a = class_constants(g)
    nc = g.num_classes
    vals = []
    for k in range(nc):
        acc = ZERO
        for i in range(nc):
            if f.values[i].is_zero():
                continue
            for j in range(nc):
                m = a[i][j][k]
                if m and not h.values[j].is_zero():
                    acc = acc + f.values[i] * h.values[j] * Fraction(m)
        vals.append(acc)
    return ClassFunction(g, tuple(vals))


@lru_cache(maxsize=None)
def _horocycle_composite_kernel(b: ParabolicData):
    """kernel[k][j] = #{(x, n) in G x N(B) : x rep_k x^{-1} n in C_j}, the
    matrix of the transform f -> [y -> (1/(|G||N|)) sum f(x y x^{-1} n)]
    (restriction to horocycles followed by its conjugation-averaging
    adjoint)."""
    g = b.group
    ops = g.ops
    nc = g.num_classes
    kernel = [[0] * nc for _ in range(nc)]
    for k, ck in enumerate(g.classes):
        y = ck.representative
        for xi, x in enumerate(g.elements):
            conj = ops.mul(ops.mul(x, y), g.inverses[xi])
            for n in b.N_points:
                kernel[k][g.class_index(ops.mul(conj, n))] += 1
    return kernel


def horocycle_composite(b: ParabolicData, f: ClassFunction) -> ClassFunction:
    """The composite of the transform to N(B)-horocycle functions with its
    adjoint back to class functions: f -> (1/(|G| |N|)) sum over x in G and
    n in N(B) of f(x y x^{-1} n)."""
    g = b.group
    kernel = _horocycle_composite_kernel(b)
    w = Fraction(1, g.order * len(b.N_points))
    vals = []
    for k in range(g.num_classes):
        acc = ZERO
        for j, m in enumerate(kernel[k]):
            if m:
                acc = acc + f.values[j] * Fraction(m)
        vals.append(acc * w)
    return ClassFunction(g, tuple(vals))


def springer_convolution_check(g: GroupTable, b: ParabolicData):
    """Verify that restriction-to-horocycles followed by its adjoint equals
    c * (- star Spr) with a single constant c derived from the convolution
    unit, Spr the Springer-sheaf trace function (unipotent-supported);
    returns (c, failures) with failures the delta-basis indices where the
    identity breaks (expected empty)."""
    spr = springer_sheaf_function(g)
    unit = identity_indicator(g)
    lhs0 = horocycle_composite(b, unit)
    rhs0 = convolve(unit, spr)
    c = None
    for x, y in zip(lhs0.values, rhs0.values):
        if not y.is_zero():
            c = x * y.inverse()
            break
    assert c is not None
    failures = []
    for i, f in enumerate(delta_basis(g)):
        lhs = horocycle_composite(b, f)
        rhs = convolve(f, spr)
        if lhs != ClassFunction(g, tuple(v * c for v in rhs.values)):
            failures.append(i)
    return c, failures
