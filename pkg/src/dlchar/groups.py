"""Fully enumerated finite reductive groups GL_n(F_q), SL_n(F_q) at small
size: conjugacy classes, standard parabolic/Levi/unipotent-radical
subgroups, F-stable maximal tori of every type with their full character
groups, and descent data for non-rational Borels.

Everything is brute-force enumeration over explicit matrix lists; group
sizes are capped so that all downstream sums stay exact and auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, cached_property
from math import gcd

from .cyclo import Cyclotomic, root_of_unity
from .fields import BudgetExceeded, FieldTower, enum_budget, make_tower, prime_factors
from .matrices import MatrixOps, matrix_order

GROUP_BUDGET_DEFAULT = 2**25

# supported (family, n, q) targets; rationale: rational and twisted suites
# finish in seconds to minutes
SUPPORTED = (
    [("SL", 2, q) for q in (2, 3, 4, 5, 7, 8, 9)]
    + [("GL", 2, q) for q in (2, 3, 4, 5)]
    + [("GL", 3, 2), ("GL", 3, 3), ("GL", 4, 2)]
)

_PRIME_POWERS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1),
                 8: (2, 3), 9: (3, 2)}


def _default_max_extension(q: int) -> int:
    n = 1
    while q ** (n + 1) <= enum_budget() and n < 12:
        n += 1
    return n


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    q: int
    max_extension: int = 0

    def __post_init__(self):
        if self.family not in ("GL", "SL"):
            raise ValueError(f"unknown family {self.family}")
        if self.q not in _PRIME_POWERS:
            raise ValueError(f"unsupported field size {self.q}")
        if self.max_extension == 0:
            object.__setattr__(self, "max_extension", _default_max_extension(self.q))

    @property
    def is_supported(self) -> bool:
        return (self.family, self.n, self.q) in SUPPORTED

    def tower(self) -> FieldTower:
        p, k = _PRIME_POWERS[self.q]
        return make_tower(p, k, self.max_extension)


@dataclass(frozen=True)
class ConjClass:
    representative: tuple
    members: tuple            # sorted element indices
    centralizer_order: int
    order: int
    is_rss: bool

    @property
    def size(self) -> int:
        return len(self.members)


class GroupTable:
    """An explicitly enumerated matrix group with conjugacy data."""

    def __init__(self, elements, ops: MatrixOps, name: str = "G",
                 tower: FieldTower | None = None, spec: GroupSpec | None = None):
        self.ops = ops
        self.name = name
        self.tower = tower
        self.spec = spec
        self.elements = sorted(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity = ops.identity()
        assert self.identity in self.index, "identity missing"
        self._build_classes()

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    # -- construction ---------------------------------------------------------

    def _generating_set(self):
        gens = []
        reached = {self.identity}
        for g in self.elements:
            if g in reached:
                continue
            gens.append(g)
            frontier = [g]
            while frontier:
                nxt = []
                for a in gens:
                    for b in frontier:
                        c = self.ops.mul(a, b)
                        if c not in reached:
                            reached.add(c)
                            nxt.append(c)
                frontier = nxt
            if len(reached) == len(self.elements):
                break
        return gens

    def _build_classes(self):
        ops = self.ops
        gens = self._generating_set()
        gens_inv = [ops.inv(g) for g in gens]
        n_el = len(self.elements)
        class_of = [-1] * n_el
        classes = []
        for start in range(n_el):
            if class_of[start] != -1:
                continue
            cid = len(classes)
            orbit = {start}
            frontier = [self.elements[start]]
            class_of[start] = cid
            while frontier:
                nxt = []
                for x in frontier:
                    for g, gi in zip(gens, gens_inv):
                        y = ops.mul(ops.mul(g, x), gi)
                        yi = self.index[y]
                        if class_of[yi] == -1:
                            class_of[yi] = cid
                            orbit.add(yi)
                            nxt.append(y)
                frontier = nxt
            members = tuple(sorted(orbit))
            rep = self.elements[members[0]]
            size = len(members)
            assert self.order % size == 0
            classes.append(ConjClass(
                representative=rep,
                members=members,
                centralizer_order=self.order // size,
                order=matrix_order(ops, rep),
                is_rss=ops.is_squarefree(ops.charpoly(rep)),
            ))
            if sum(c.size for c in classes) == n_el:
                if all(v != -1 for v in class_of):
                    break
        self.classes = classes
        self.class_of = class_of
        assert sum(c.size for c in classes) == self.order

    # -- access ---------------------------------------------------------------

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_index(self, g) -> int:
        return self.class_of[self.index[g]]

    @cached_property
    def inverses(self):
        return [self.ops.inv(g) for g in self.elements]

    @cached_property
    def inverse_class(self):
        """inverse_class[i] = class index of rep_i^{-1}."""
        return [self.class_index(self.ops.inv(c.representative)) for c in self.classes]

    @lru_cache(maxsize=None)
    def power_class(self, cid: int, t: int) -> int:
        ops = self.ops
        rep = self.classes[cid].representative
        x = self.identity
        t %= self.classes[cid].order
        for _ in range(t):
            x = ops.mul(x, rep)
        return self.class_index(x)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for c in self.classes:
            e = e * c.order // gcd(e, c.order)
        return e

    def centralizer_order_brute(self, g) -> int:
        ops = self.ops
        return sum(1 for x in self.elements
                   if ops.mul(x, g) == ops.mul(g, x))


def subgroup_table(parent: GroupTable, elements, name: str) -> GroupTable:
    """GroupTable for a subgroup given by its element list."""
    return GroupTable(elements, parent.ops, name=name,
                      tower=parent.tower, spec=None)


@lru_cache(maxsize=None)
def build_group(spec: GroupSpec, budget: int | None = None) -> GroupTable:
    """Enumerate the group, deterministic element ordering."""
    tower = spec.tower()
    base = tower.level(1)
    n, q = spec.n, spec.q
    total = 1
    for i in range(n):
        total *= q ** n - q ** i
    if spec.family == "SL":
        total //= q - 1
    cap = budget if budget is not None else int(
        __import__("os").environ.get("DLCHAR_BUDGET", GROUP_BUDGET_DEFAULT))
    if total > cap:
        raise BudgetExceeded(f"|{spec.family}_{n}(F_{q})| = {total} exceeds {cap}")
    ops = MatrixOps(base, n)
    want_det = None if spec.family == "GL" else 1
    elements = []
    for code in range(q ** (n * n)):
        c = code
        flat = []
        for _ in range(n * n):
            flat.append(c % q)
            c //= q
        m = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        d = ops.det(m)
        if d == 0:
            continue
        if want_det is not None and d != want_det:
            continue
        elements.append(m)
    assert len(elements) == total, (len(elements), total)
    name = f"{spec.family}{n}(F{q})"
    return GroupTable(elements, ops, name=name, tower=tower, spec=spec)


# ---------------------------------------------------------------------------
# parabolic subgroups

@dataclass(eq=False)
class ParabolicData:
    """A rational standard parabolic P = M x| N(P), block (upper or lower)
    triangular with respect to an ordered composition of n."""

    group: GroupTable
    block_composition: tuple
    lower: bool
    P_points: list
    N_points: list
    levi: GroupTable
    levi_projection: dict

    @property
    def name(self) -> str:
        side = "lower" if self.lower else "upper"
        return f"P{self.block_composition}-{side}"

    def project(self, p):
        return self.levi_projection[p]


def _block_ranges(composition):
    out = []
    start = 0
    for b in composition:
        out.append(range(start, start + b))
        start += b
    return out


def standard_parabolic(g: GroupTable, composition, lower: bool = False) -> ParabolicData:
    n = g.ops.n
    if sum(composition) != n or any(b <= 0 for b in composition):
        raise ValueError(f"invalid composition {composition} for n = {n}")
    blocks = _block_ranges(composition)
    block_id = [None] * n
    for bi, rng in enumerate(blocks):
        for i in rng:
            block_id[i] = bi

    def in_P(m):
        for i in range(n):
            for j in range(n):
                off = block_id[i] > block_id[j] if not lower else block_id[i] < block_id[j]
                if off and m[i][j] != 0:
                    return False
        return True

    def in_M(m):
        return all(m[i][j] == 0 for i in range(n) for j in range(n)
                   if block_id[i] != block_id[j])

    def proj(m):
        return tuple(tuple(m[i][j] if block_id[i] == block_id[j] else 0
                           for j in range(n)) for i in range(n))

    P_points = [m for m in g.elements if in_P(m)]
    M_points = [m for m in P_points if in_M(m)]
    N_points = [m for m in P_points
                if proj(m) == g.identity]
    levi = subgroup_table(g, M_points, name=f"Levi{tuple(composition)}")
    levi_projection = {m: proj(m) for m in P_points}
    pd = ParabolicData(g, tuple(composition), lower, P_points, N_points,
                       levi, levi_projection)
    _check_levi_decomposition(pd)
    return pd


def _check_levi_decomposition(p: ParabolicData):
    """P = M x| N with unique factorization; projection is a hom with kernel N."""
    ops = p.group.ops
    n_set = set(p.N_points)
    assert len(p.P_points) == len(p.levi.elements) * len(p.N_points)
    for m in p.P_points:
        lv = p.project(m)
        assert lv in p.levi.index
        u = ops.mul(ops.inv(lv), m)
        assert u in n_set, "not M x| N factorizable"
    for a in p.P_points[: min(40, len(p.P_points))]:
        for b in p.P_points[: min(20, len(p.P_points))]:
            assert p.project(ops.mul(a, b)) == \
                p.levi.ops.mul(p.project(a), p.project(b))


def opposite_parabolic(p: ParabolicData) -> ParabolicData:
    return standard_parabolic(p.group, p.block_composition, lower=not p.lower)


def borel(g: GroupTable, lower: bool = False) -> ParabolicData:
    return standard_parabolic(g, (1,) * g.ops.n, lower=lower)


# ---------------------------------------------------------------------------
# maximal tori

@dataclass
class ThetaChar:
    """A linear character of T_w(F_q), stored by exponents against the
    torus's cyclic decomposition."""

    torus: "TorusData"
    exponents: tuple

    def conductor_bound(self):
        L = 1
        for (d, _), a in zip(self.torus.abelian_structure, self.exponents):
            o = d // gcd(d, a) if a else 1
            L = L * o // gcd(L, o)
        return L

    def exponent_at(self, t) -> tuple[int, int]:
        """(j, L): value is zeta_L^j, L = lcm of factor orders."""
        L = self.torus.exponent_lcm
        coords = self.torus.coords[t]
        j = 0
        for (d, _), a, c in zip(self.torus.abelian_structure, self.exponents, coords):
            j = (j + a * c * (L // d)) % L
        return j, L

    def value(self, t) -> Cyclotomic:
        j, L = self.exponent_at(t)
        return root_of_unity(L, j)

    def inverse(self) -> "ThetaChar":
        return ThetaChar(self.torus, tuple(
            (-a) % d for (d, _), a in zip(self.torus.abelian_structure, self.exponents)))

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.exponents)

    def __eq__(self, other):
        return self.torus is other.torus and self.exponents == other.exponents

    def __hash__(self):
        return hash((id(self.torus), self.exponents))

    @property
    def label(self) -> str:
        return "theta" + "_".join(str(a) for a in self.exponents)


@dataclass(eq=False)
class TorusData:
    """An F-stable maximal torus T_lambda(F_q) embedded by block companion
    matrices of degree-lambda_i extensions."""

    group: GroupTable
    type_w: tuple                       # partition of n
    points: list
    abelian_structure: list             # [(order, generator-matrix)]
    coords: dict                        # matrix -> exponent tuple
    part_data: list                     # per part: (d, basis codes, elt<->matrix maps)

    @property
    def order(self) -> int:
        return len(self.points)

    @cached_property
    def exponent_lcm(self) -> int:
        L = 1
        for d, _ in self.abelian_structure:
            L = L * d // gcd(L, d)
        return L

    @cached_property
    def character_index(self) -> list[ThetaChar]:
        out = []
        dims = [d for d, _ in self.abelian_structure]

        def rec(prefix):
            if len(prefix) == len(dims):
                out.append(ThetaChar(self, tuple(prefix)))
                return
            for a in range(dims[len(prefix)]):
                rec(prefix + [a])
        rec([])
        assert len(out) == self.order
        return out

    def field_coords(self, t) -> tuple:
        """Per-part field element codes (t_1, ..., t_r), t_i in level d_i."""
        out = []
        for (d, basis, elt_of_mat, _), rng in zip(self.part_data, self._ranges()):
            block = tuple(tuple(t[i][j] for j in rng) for i in rng)
            out.append(elt_of_mat[block])
        return tuple(out)

    def _ranges(self):
        return _block_ranges(self.type_w)

    def element_from_field_coords(self, codes) -> tuple:
        n = self.group.ops.n
        m = [[0] * n for _ in range(n)]
        for (d, basis, _, mat_of_elt), rng, c in zip(self.part_data, self._ranges(), codes):
            blk = mat_of_elt[c]
            for ii, i in enumerate(rng):
                for jj, j in enumerate(rng):
                    m[i][j] = blk[ii][jj]
        return tuple(tuple(row) for row in m)


def _companion_block(tower: FieldTower, d: int):
    """The embedding F_{q^d}^x -> GL_d(F_q) by multiplication matrices on the
    basis 1, beta, ..., beta^{d-1} (beta the level generator); returns
    (basis codes, {code -> matrix}, {matrix -> code})."""
    base = tower.level(1)
    sd = tower.level(d)
    q = tower.q
    beta = sd.generator
    basis = [sd.pow(beta, i) for i in range(d)]
    # all F_q-combinations of the basis, coords recorded
    coord_of = {}
    combos = [(0, (0,) * d)]
    coord_of[0] = (0,) * d
    for i in range(d):
        new = []
        for code, cv in combos:
            acc = code
            for c in range(1, q):
                scaled = sd.mul(tower.embed_code(1, d, c), basis[i])
                acc2 = sd.add(code, scaled)
                cv2 = tuple(cv[j] if j != i else c for j in range(d))
                new.append((acc2, cv2))
        combos.extend(new)
    for code, cv in combos:
        coord_of[code] = cv
    assert len(coord_of) == q ** d
    mat_of = {}
    elt_of = {}
    for t in range(1, sd.size):
        cols = [coord_of[sd.mul(t, b)] for b in basis]
        m = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
        mat_of[t] = m
        elt_of[m] = t
    return basis, mat_of, elt_of


def maximal_torus(g: GroupTable, type_w) -> TorusData:
    """T_lambda(F_q) c G(F_q), lambda a partition of n."""
    lam = tuple(sorted(type_w, reverse=True))
    n = g.ops.n
    if sum(lam) != n:
        raise ValueError(f"{type_w} is not a partition of {n}")
    tower = g.tower
    part_data = []
    for d in lam:
        basis, mat_of, elt_of = _companion_block(tower, d)
        part_data.append((d, basis, elt_of, mat_of))
    # assemble all block-diagonal combinations, filtering by group membership
    ranges = _block_ranges(lam)
    points = []
    def assemble(codes):
        m = [[0] * n for _ in range(n)]
        for (d, basis, elt_of, mat_of), rng, c in zip(part_data, ranges, codes):
            blk = mat_of[c]
            for ii, i in enumerate(rng):
                for jj, j in enumerate(rng):
                    m[i][j] = blk[ii][jj]
        return tuple(tuple(row) for row in m)

    def rec(codes):
        if len(codes) == len(lam):
            m = assemble(codes)
            if m in g.index:
                points.append(m)
            return
        d = lam[len(codes)]
        for t in range(1, tower.level(d).size):
            rec(codes + [t])
    rec([])
    expected = 1
    for d in lam:
        expected *= g.spec.q ** d - 1
    if g.spec is not None and g.spec.family == "SL":
        expected //= g.spec.q - 1
    assert len(points) == expected, (len(points), expected)

    structure, coords = _abelian_decomposition(points, g.ops)
    td = TorusData(group=g, type_w=lam, points=points,
                   abelian_structure=structure, coords=coords,
                   part_data=part_data)
    return td


def _abelian_decomposition(points, ops: MatrixOps):
    """Cyclic decomposition of a finite abelian matrix group: invariant
    factors d_1 >= d_2 >= ... with generators, plus coordinates of every
    element."""
    ident = ops.identity()
    total = len(points)
    pointset = set(points)
    factors = []
    sub = {ident: ()}
    while len(sub) < total:
        best, best_ord = None, 0
        for t in points:
            if t in sub and t != ident:
                continue
            k, x = 1, t
            while x not in sub:
                x = ops.mul(x, t)
                k += 1
            if k > best_ord:
                best, best_ord = t, k
        # adjust within the coset so the order in the group equals the
        # quotient order; a valid representative always exists
        chosen = None
        for h in list(sub):
            cand = ops.mul(best, h)
            if matrix_order(ops, cand) == best_ord:
                chosen = cand
                break
        assert chosen is not None, "no direct-sum representative found"
        factors.append((best_ord, chosen))
        new_sub = {}
        for h, cv in sub.items():
            x = h
            for a in range(best_ord):
                new_sub[x] = cv + (a,)
                x = ops.mul(x, chosen)
        sub = new_sub
        assert len(sub) == _prod(f[0] for f in factors)
    assert set(sub) == pointset
    # reorder coordinates to match factor order
    coords = {t: cv for t, cv in sub.items()}
    return factors, coords


def _prod(it):
    out = 1
    for v in it:
        out *= v
    return out


# ---------------------------------------------------------------------------
# relative Weyl action on torus characters

def torus_normalizer(g: GroupTable, t: TorusData):
    """Coset representatives of N_G(T)(F_q) / T(F_q)."""
    ops = g.ops
    tset = set(t.points)
    gens = [m for _, m in t.abelian_structure]
    reps = []
    seen_cosets = set()
    for x in g.elements:
        xi = ops.inv(x)
        if all(ops.mul(ops.mul(x, gen), xi) in tset for gen in gens):
            key = frozenset(ops.mul(x, tt) for tt in t.points[: 1])
            coset_key = min(ops.mul(x, tt) for tt in t.points)
            if coset_key not in seen_cosets:
                seen_cosets.add(coset_key)
                reps.append(x)
    return reps


def character_conjugate(t: TorusData, theta: ThetaChar, w) -> ThetaChar:
    """theta^w with theta^w(x) = theta(w^{-1} x w)."""
    ops = t.group.ops
    wi = ops.inv(w)
    L = t.exponent_lcm
    exps = []
    for (d, gen) in t.abelian_structure:
        moved = ops.mul(ops.mul(wi, gen), w)
        j, _ = theta.exponent_at(moved)
        assert (j * d) % L == 0, "conjugated character exponent not integral"
        exps.append((j * d // L) % d)
    return ThetaChar(t, tuple(exps))


def weyl_orbit_characters(t: TorusData):
    """Partition of the character index into orbits under the relative Weyl
    group N_G(T)(F_q)/T(F_q); returns (orbits, reps, action) where action
    maps (char, rep index) -> char."""
    g = t.group
    reps = torus_normalizer(g, t)
    chars = t.character_index
    key = {c.exponents: i for i, c in enumerate(chars)}
    orbits = []
    seen = set()
    for i, c in enumerate(chars):
        if i in seen:
            continue
        orbit = {i}
        frontier = [c]
        while frontier:
            nxt = []
            for ch in frontier:
                for w in reps:
                    moved = character_conjugate(t, ch, w)
                    mi = key[moved.exponents]
                    if mi not in orbit:
                        orbit.add(mi)
                        nxt.append(chars[mi])
            frontier = nxt
        seen |= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits, reps


def is_w_conjugate(t: TorusData, theta1: ThetaChar, theta2: ThetaChar) -> bool:
    reps = torus_normalizer(t.group, t)
    return any(character_conjugate(t, theta1, w).exponents == theta2.exponents
               for w in reps)


# ---------------------------------------------------------------------------
# twisted Borel descent data

@dataclass(eq=False)
class TwistedBorelDatum:
    """Descent datum for a Borel containing a (possibly nonsplit) maximal
    torus of a rank-2 group: conjugator h over F_{q^m} with h T_0 h^{-1} =
    T_w, the twist wdot = h^{-1} Frob(h) in N(T_0), and the choice label
    distinguishing the two Borels through the torus."""

    group: GroupTable
    torus: TorusData
    choice: str                 # "plus" | "minus"
    level: int                  # m with h defined over F_{q^m}
    h: tuple                    # matrix over level m
    wdot: tuple                 # h^{-1} F(h), monomial matrix over level m
    weyl_class: str             # "id" or "s"

    @property
    def name(self) -> str:
        return f"B{self.choice}-{self.weyl_class}"


@lru_cache(maxsize=None)
def twisted_parabolic_datum(g: GroupTable, t: TorusData, choice: str = "plus"
                            ) -> TwistedBorelDatum:
    if g.ops.n != 2:
        raise ValueError("twisted descent data implemented for rank-2 groups only")
    if choice not in ("plus", "minus"):
        raise ValueError(f"unknown choice {choice}")
    tower = g.tower
    lam = t.type_w
    if lam == (1, 1):
        level = 1
    elif lam == (2,):
        level = 2
    else:
        raise ValueError(f"unsupported torus type {lam}")
    if level > tower.max_level:
        raise BudgetExceeded("conjugator level unsupported by the tower")
    spec = tower.level(level)
    mops = MatrixOps(spec, 2)
    if lam == (1, 1):
        h = mops.identity()
    else:
        level = 2 if tower.p == 2 else 4
        if level > tower.max_level:
            raise BudgetExceeded("conjugator level unsupported by the tower")
        spec = tower.level(level)
        mops = MatrixOps(spec, 2)
        h = _twisted_conjugator(g, t, level)
    if choice == "minus":
        s0 = ((0, spec.neg(1)), (1, 0))
        h = mops.mul(h, s0)
    Fh = tuple(tuple(tower.frobenius_code(level, x) for x in row) for row in h)
    wdot = mops.mul(mops.inv(h), Fh)
    diag = wdot[0][1] == 0 and wdot[1][0] == 0
    anti = wdot[0][0] == 0 and wdot[1][1] == 0
    assert diag or anti, "twist not monomial"
    if anti:
        # normalization makes the twist the standard rational lift
        assert wdot == ((0, spec.neg(1)), (1, 0)), "twist not normalized"
    return TwistedBorelDatum(group=g, torus=t, choice=choice, level=level,
                             h=h, wdot=wdot, weyl_class="id" if diag else "s")


def _twisted_conjugator(g: GroupTable, t: TorusData, level: int):
    """h over F_{q^level} with h^{-1} T_w h diagonal and h^{-1} F(h) the
    standard rational reflection lift ((0,-1),(1,0)).

    The columns are (V, F(V)) for an eigenvector V of the companion block:
    V is scaled so that F^2(V) = -V (trivial in characteristic 2), which
    makes det(V, F(V)) rational, and then so that the determinant is 1."""
    tower = g.tower
    spec = tower.level(level)
    mops = MatrixOps(spec, 2)
    frob = lambda x: tower.frobenius_code(level, x)
    d, basis, elt_of, mat_of = t.part_data[0]
    beta = tower.embed_code(2, level, tower.level(2).generator)
    M = mat_of[tower.level(2).generator]
    lift = lambda c: tower.embed_code(1, level, c)
    a, b = lift(M[0][0]), lift(M[0][1])
    c0, dd = lift(M[1][0]), lift(M[1][1])
    v = (b, spec.sub(beta, a))
    if v == (0, 0):
        v = (spec.sub(beta, dd), c0)
    assert v != (0, 0)
    q = tower.q
    if spec.p != 2:
        # scale so F^2(V) = -V: lambda^(q^2 - 1) = -1
        lam = spec.pow(spec.generator, (spec.size - 1) // (2 * (q * q - 1)))
        assert spec.pow(lam, q * q - 1) == spec.neg(1)
        v = (spec.mul(lam, v[0]), spec.mul(lam, v[1]))
    fv = (frob(v[0]), frob(v[1]))
    delta = mops.det(((v[0], fv[0]), (v[1], fv[1])))
    assert delta != 0 and frob(delta) == delta, "determinant not rational"
    # rescale V by a level-2 element of norm 1/delta: det(h) becomes 1 and
    # the (V, F(V)) column pattern survives, keeping wdot standard
    mu = None
    target = spec.inv(delta)
    for cand in range(1, tower.level(2).size):
        c2 = tower.embed_code(2, level, cand)
        if spec.mul(c2, spec.pow(c2, q)) == target:
            mu = c2
            break
    assert mu is not None, "norm equation unsolvable"
    v = (spec.mul(mu, v[0]), spec.mul(mu, v[1]))
    fv = (frob(v[0]), frob(v[1]))
    h = ((v[0], fv[0]), (v[1], fv[1]))
    assert mops.det(h) == 1
    return h


def groups_json(g: GroupTable) -> dict:
    """Class table dump (the groups.json schema)."""
    return {
        "name": g.name,
        "order": g.order,
        "num_classes": g.num_classes,
        "classes": [
            {
                "representative": [list(r) for r in c.representative],
                "size": c.size,
                "centralizer_order": c.centralizer_order,
                "order": c.order,
                "is_rss": c.is_rss,
            }
            for c in g.classes
        ],
    }
