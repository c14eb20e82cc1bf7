"""Root-system combinatorics of parabolics sharing a Levi: relative
positions, adding up, adjacency through sub-maximal opposite parabolics,
and the reduction chains behind the transitivity of the functional
equation.

Parabolics are modeled purely as root subsets (bitmask-encoded), which
keeps types B/C/D in scope without matrix models.  All enumeration is
exhaustive and deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


# ---------------------------------------------------------------------------
# root systems

def _build_roots(cartan_type: str, rank: int):
    rt = []
    n = rank

    def e(i, s=1):
        v = [0] * dim
        v[i] = s
        return v

    if cartan_type == "A":
        dim = n + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i], v[j] = 1, -1
                    rt.append(tuple(v))
        simples = [tuple([0] * i + [1, -1] + [0] * (dim - i - 2)) for i in range(n)]
    elif cartan_type in ("B", "C", "D"):
        dim = n
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * dim
                        v[i], v[j] = si, sj
                        rt.append(tuple(v))
        if cartan_type == "B":
            for i in range(n):
                for s in (1, -1):
                    v = [0] * dim
                    v[i] = s
                    rt.append(tuple(v))
        elif cartan_type == "C":
            for i in range(n):
                for s in (2, -2):
                    v = [0] * dim
                    v[i] = s
                    rt.append(tuple(v))
        simples = []
        for i in range(n - 1):
            v = [0] * dim
            v[i], v[i + 1] = 1, -1
            simples.append(tuple(v))
        if cartan_type == "B":
            v = [0] * dim
            v[n - 1] = 1
            simples.append(tuple(v))
        elif cartan_type == "C":
            v = [0] * dim
            v[n - 1] = 2
            simples.append(tuple(v))
        else:
            v = [0] * dim
            v[n - 2], v[n - 1] = 1, 1
            simples.append(tuple(v))
    else:
        raise ValueError(f"unknown Cartan type {cartan_type}")
    return sorted(set(rt)), simples


_EXPECTED_COUNTS = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n,
                    "C": lambda n: 2 * n * n, "D": lambda n: 2 * n * (n - 1)}


class RootSystem:
    """Roots, simple system, reflections, and the Weyl group as root-index
    permutations."""

    def __init__(self, cartan_type: str, rank: int):
        if rank > 4:
            raise ValueError("rank capped at 4")
        if cartan_type == "D" and rank < 3:
            raise ValueError("D needs rank >= 3")
        self.cartan_type = cartan_type
        self.rank = rank
        self.roots, self.simples = _build_roots(cartan_type, rank)
        assert len(self.roots) == _EXPECTED_COUNTS[cartan_type](rank)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.nroots = len(self.roots)
        self.full_mask = (1 << self.nroots) - 1
        self.positive_mask = self._positive_mask()
        self._weyl = None

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    def _positive_mask(self):
        m = 0
        simple_idx = [self.roots.index(s) for s in self.simples]
        for i, r in enumerate(self.roots):
            # positive iff the first nonzero coefficient over the simple
            # basis is positive; equivalently a fixed generic functional
            key = sum((3 ** k) * c for k, c in enumerate(reversed(r)))
            if key > 0:
                m |= 1 << i
        assert bin(m).count("1") == self.nroots // 2
        return m

    def neg_mask(self, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << self.index[tuple(-c for c in self.roots[i])]
        return out

    def reflect(self, alpha, beta):
        num = 2 * sum(a * b for a, b in zip(alpha, beta))
        den = sum(a * a for a in alpha)
        f = Fraction(num, den)
        assert f.denominator == 1
        return tuple(b - f.numerator * a for a, b in zip(alpha, beta))

    def simple_reflection_perm(self, s):
        return tuple(self.index[self.reflect(s, r)] for r in self.roots)

    def weyl_group(self):
        """All elements as root-index permutation tuples."""
        if self._weyl is not None:
            return self._weyl
        gens = [self.simple_reflection_perm(s) for s in self.simples]
        ident = tuple(range(self.nroots))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    wg = tuple(w[g[i]] for i in range(self.nroots))
                    if wg not in seen:
                        seen.add(wg)
                        nxt.append(wg)
            frontier = nxt
        self._weyl = sorted(seen)
        return self._weyl

    def apply_perm(self, w, mask: int) -> int:
        out = 0
        for i in _bits(mask):
            out |= 1 << w[i]
        return out

    def is_closed(self, mask: int) -> bool:
        idxs = list(_bits(mask))
        for i in idxs:
            ri = self.roots[i]
            for j in idxs:
                s = tuple(a + b for a, b in zip(ri, self.roots[j]))
                k = self.index.get(s)
                if k is not None and not (mask >> k) & 1:
                    return False
        return True

    def closure(self, mask: int) -> int:
        changed = True
        while changed:
            changed = False
            idxs = list(_bits(mask))
            for i in idxs:
                ri = self.roots[i]
                for j in idxs:
                    s = tuple(a + b for a, b in zip(ri, self.roots[j]))
                    k = self.index.get(s)
                    if k is not None and not (mask >> k) & 1:
                        mask |= 1 << k
                        changed = True
        return mask

    def saturation(self, mask: int) -> int:
        """Phi cap span(mask), computed over the rationals."""
        vecs = [self.roots[i] for i in _bits(mask)]
        if not vecs:
            return 0
        out = 0
        for i, r in enumerate(self.roots):
            if _in_span(vecs, r):
                out |= 1 << i
        return out

    def mask_key(self, mask: int):
        return tuple(self.roots[i] for i in _bits(mask))


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _in_span(vecs, target):
    rows = [list(map(Fraction, v)) for v in vecs]
    t = list(map(Fraction, target))
    cols = len(t)
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        if t[c]:
            f = t[c]
            t = [x - f * y for x, y in zip(t, rows[r])]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return all(x == 0 for x in t)


@lru_cache(maxsize=None)
def root_system(cartan_type: str, rank: int) -> RootSystem:
    return RootSystem(cartan_type, rank)


# ---------------------------------------------------------------------------
# Levi sets and parabolic root sets

@dataclass(frozen=True)
class LeviSet:
    rs: RootSystem
    mask: int

    def __post_init__(self):
        rs, m = self.rs, self.mask
        assert rs.neg_mask(m) == m, "Levi set not symmetric"
        assert rs.is_closed(m), "Levi set not closed"
        assert rs.saturation(m) == m, "Levi set not saturated"

    def __hash__(self):
        return hash((id(self.rs), self.mask))


@dataclass(frozen=True)
class ParabolicRootSet:
    rs: RootSystem
    levi_mask: int
    nil_mask: int

    def __post_init__(self):
        rs = self.rs
        p = self.levi_mask | self.nil_mask
        assert self.levi_mask & self.nil_mask == 0
        assert rs.is_closed(p), "parabolic set not closed"
        assert p | rs.neg_mask(p) == rs.full_mask
        assert p & rs.neg_mask(p) == self.levi_mask

    @property
    def mask(self) -> int:
        return self.levi_mask | self.nil_mask

    def sort_key(self):
        return self.rs.mask_key(self.nil_mask)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ParabolicRootSet):
            return NotImplemented
        return (self.rs is other.rs and self.levi_mask == other.levi_mask
                and self.nil_mask == other.nil_mask)

    def __hash__(self):
        return hash((id(self.rs), self.levi_mask, self.nil_mask))

    def __repr__(self):
        return f"P[levi={self.levi_mask:x},nil={self.nil_mask:x}]"


@lru_cache(maxsize=None)
def all_parabolic_masks(rs: RootSystem):
    """All parabolic subsets of Phi, as (full mask, levi mask) pairs: the
    Weyl translates of the standard ones."""
    simples = rs.simples
    std = []
    pos = rs.positive_mask
    for sub in range(1 << len(simples)):
        j_mask = 0
        vecs = [simples[k] for k in range(len(simples)) if (sub >> k) & 1]
        if vecs:
            for i, r in enumerate(rs.roots):
                if _in_span(vecs, r):
                    j_mask |= 1 << i
        std.append(pos | j_mask)
    seen = {}
    for w in rs.weyl_group():
        for m in std:
            pm = rs.apply_perm(w, m)
            if pm not in seen:
                seen[pm] = pm & rs.neg_mask(pm)
    return tuple(sorted(seen.items()))


@lru_cache(maxsize=None)
def all_levi_masks(rs: RootSystem):
    return tuple(sorted({levi for _, levi in all_parabolic_masks(rs)}))


@lru_cache(maxsize=None)
def parabolics_with_levi(rs: RootSystem, levi: LeviSet):
    """Exhaustive, deterministic list of parabolic root sets with the given
    Levi."""
    out = []
    for pm, lm in all_parabolic_masks(rs):
        if lm == levi.mask:
            out.append(ParabolicRootSet(rs, lm, pm & ~lm))
    out.sort(key=lambda p: p.sort_key())
    return tuple(out)


def positions_add_up(p1: ParabolicRootSet, p2: ParabolicRootSet,
                     p3: ParabolicRootSet) -> bool:
    """N(P1) cap N(P3) inside N(P2)."""
    if not (p1.levi_mask == p2.levi_mask == p3.levi_mask):
        raise ValueError("Levi mismatch")
    return (p1.nil_mask & p3.nil_mask) & ~p2.nil_mask == 0


def distance(p1: ParabolicRootSet, p2: ParabolicRootSet) -> int:
    return bin(p1.nil_mask & ~p2.nil_mask).count("1")


# -- sub-root-systems for the adjacency test --------------------------------

@lru_cache(maxsize=None)
def _sub_parabolic_masks(rs: RootSystem, levi_of_q: int):
    """All parabolic subsets of the sub-root-system Phi_L (L the Levi of
    some parabolic Q), as masks inside the ambient bit coordinates."""
    idxs = list(_bits(levi_of_q))
    if not idxs:
        return (0,)
    # simple system of the subsystem from a generic functional
    sub_roots = [rs.roots[i] for i in idxs]
    # reflections within the subsystem permute it; generate its Weyl group
    perms = []
    for a in sub_roots:
        perm = {}
        ok = True
        for i in idxs:
            img = rs.reflect(a, rs.roots[i])
            j = rs.index.get(img)
            if j is None or not (levi_of_q >> j) & 1:
                ok = False
                break
            perm[i] = j
        if ok:
            perms.append(perm)
    assert perms, "subsystem has no reflections"
    # positive system: fixed generic functional, deterministic
    weights = [Fraction(3 ** k) for k in range(len(rs.roots[0]))]
    def height(v):
        return sum(w * c for w, c in zip(weights, reversed(v)))
    pos = [i for i in idxs if height(rs.roots[i]) > 0]
    assert len(pos) * 2 == len(idxs)
    pos_mask = 0
    for i in pos:
        pos_mask |= 1 << i
    # simples: positives not a sum of two positives
    posset = {rs.roots[i] for i in pos}
    simple_vecs = []
    for i in pos:
        r = rs.roots[i]
        decomposable = any(
            tuple(x - y for x, y in zip(r, s)) in posset for s in posset
            if s != r)
        if not decomposable:
            simple_vecs.append(r)
    # standard parabolic subsets of the subsystem
    std = []
    for sub in range(1 << len(simple_vecs)):
        vecs = [simple_vecs[k] for k in range(len(simple_vecs)) if (sub >> k) & 1]
        j_mask = 0
        if vecs:
            for i in idxs:
                if _in_span(vecs, rs.roots[i]):
                    j_mask |= 1 << i
        std.append(pos_mask | j_mask)
    # subsystem Weyl group from the root reflections
    gens = perms
    ident = {i: i for i in idxs}
    seen_w = {tuple(sorted(ident.items()))}
    frontier = [ident]
    elements = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for gperm in gens:
                wg = {i: w[gperm[i]] for i in idxs}
                key = tuple(sorted(wg.items()))
                if key not in seen_w:
                    seen_w.add(key)
                    nxt.append(wg)
                    elements.append(wg)
        frontier = nxt
    out = set()
    for w in elements:
        for m in std:
            pm = 0
            for i in _bits(m):
                pm |= 1 << w[i]
            out.add(pm)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _maximal_proper_subparabolics(rs: RootSystem, levi_of_q: int):
    subs = _sub_parabolic_masks(rs, levi_of_q)
    full = levi_of_q
    maximal = []
    for m in subs:
        if m == full:
            continue
        if not any(m != m2 and m2 != full and m & m2 == m for m2 in subs):
            maximal.append(m)
    return frozenset(maximal)


@lru_cache(maxsize=None)
def adjacent(p1: ParabolicRootSet, p2: ParabolicRootSet):
    """The witnessing parabolic Q >= P1, P2 whose Levi sees P1, P2 as
    sub-maximal opposite parabolics, or None."""
    rs = p1.rs
    if p1.levi_mask != p2.levi_mask:
        raise ValueError("Levi mismatch")
    if p1 == p2:
        return None
    union = p1.mask | p2.mask
    best = None
    for qm, q_levi in all_parabolic_masks(rs):
        if union & ~qm:
            continue
        im1 = p1.mask & q_levi
        im2 = p2.mask & q_levi
        if im1 & im2 != p1.levi_mask:
            continue  # images not opposite through the common Levi
        maximal = _maximal_proper_subparabolics(rs, q_levi)
        if im1 in maximal and im2 in maximal:
            key = (bin(qm).count("1"), rs.mask_key(qm))
            if best is None or key < best[0]:
                best = (key, ParabolicRootSet(rs, q_levi, qm & ~q_levi))
    return None if best is None else best[1]


@lru_cache(maxsize=None)
def adjacency_lists(rs: RootSystem, levi: LeviSet):
    ps = parabolics_with_levi(rs, levi)
    out = {}
    for p in ps:
        out[p] = tuple(p2 for p2 in ps if p2 != p and adjacent(p, p2) is not None)
    return out


# ---------------------------------------------------------------------------
# Lemma verification and reduction chains

def verify_rel_bruhat(rs: RootSystem, levi: LeviSet) -> dict:
    """Part (a): for P1 != P2 and P1' adjacent to P1, exactly one of
    positions_add_up(P1, P1', P2), positions_add_up(P1', P1, P2) holds.
    Part (b): for P1 != P2 some adjacent P1' realizes scenario (1)."""
    ps = parabolics_with_levi(rs, levi)
    adj = adjacency_lists(rs, levi)
    counterexamples_a = []
    counterexamples_b = []
    checked_a = checked_b = 0
    for p1 in ps:
        for p2 in ps:
            if p1 == p2:
                continue
            found_scenario1 = False
            for p1p in adj[p1]:
                checked_a += 1
                s1 = positions_add_up(p1, p1p, p2)
                s2 = positions_add_up(p1p, p1, p2)
                if s1 == s2:
                    counterexamples_a.append((p1, p1p, p2, s1, s2))
                if s1:
                    found_scenario1 = True
            checked_b += 1
            if not found_scenario1:
                counterexamples_b.append((p1, p2))
    return {
        "type": rs.name,
        "levi_size": bin(levi.mask).count("1"),
        "num_parabolics": len(ps),
        "checked_a": checked_a,
        "checked_b": checked_b,
        "counterexamples_a": counterexamples_a,
        "counterexamples_b": counterexamples_b,
    }


@lru_cache(maxsize=None)
def _choose_expansion(p1: ParabolicRootSet, p2: ParabolicRootSet):
    """Lexicographically least P1' adjacent to P1 with
    positions_add_up(P1, P1', P2); exists whenever P1 != P2."""
    rs = p1.rs
    levi = LeviSet(rs, p1.levi_mask)
    adj = adjacency_lists(rs, levi)
    cands = [p for p in adj[p1] if positions_add_up(p1, p, p2)]
    assert cands, "rel-Bruhat part (b) failed"
    return min(cands, key=lambda p: p.sort_key())


def reduction_chain(p1: ParabolicRootSet, p2: ParabolicRootSet,
                    p3: ParabolicRootSet):
    """Certificate reducing the composite intertwiner P1 -> P2 -> P3 to
    P1 -> P3 by add-up compositions and involution cancellations.  Returns
    (moves, distances): moves are (tag, payload) pairs replayable on the
    path, distances the strictly decreasing induction measure."""
    if not (p1.levi_mask == p2.levi_mask == p3.levi_mask):
        raise ValueError("Levi mismatch")
    moves = []
    distances = []

    def reduce3(a, b, c, spine: bool):
        # transform path [a, b, c] into [a, c]; `spine` marks the calls of
        # the induction on the distance between the first two entries
        if a == b or b == c:
            return
        if spine:
            distances.append(distance(a, b))
        if positions_add_up(a, b, c):
            moves.append(("add-up", (a, b, c)))
            return
        if a == c:
            moves.append(("involution", (a, b)))
            return
        q = adjacent(a, b)
        if q is not None:
            # a, b adjacent: by rel-Bruhat(a) the other scenario holds
            assert positions_add_up(b, a, c), "rel-Bruhat part (a) failed"
            moves.append(("add-up-expand", (b, a, c)))
            moves.append(("involution", (a, b)))
            return
        p1p = _choose_expansion(a, b)
        moves.append(("add-up-expand", (a, p1p, b)))
        reduce3(p1p, b, c, spine)
        reduce3(a, p1p, c, False)

    reduce3(p1, p2, p3, True)
    for x, y in zip(distances, distances[1:]):
        assert y < x, "induction distance did not decrease"
    _replay(moves, p1, p2, p3)
    return moves, distances


def _replay(moves, p1, p2, p3):
    """Replay the certificate on the formal path and confirm it lands on
    (p1, p3) with every move legal."""
    path = [p1, p2, p3]
    path = [x for i, x in enumerate(path) if i == 0 or x != path[i - 1]]
    for tag, payload in moves:
        if tag == "add-up":
            a, b, c = payload
            i = _find_triple(path, a, b, c)
            assert positions_add_up(a, b, c)
            path = path[:i + 1] + path[i + 2:]
        elif tag == "add-up-expand":
            a, b, c = payload
            i = next(k for k in range(len(path) - 1)
                     if path[k] == a and path[k + 1] == c)
            assert positions_add_up(a, b, c)
            path = path[:i + 1] + [b] + path[i + 1:]
        elif tag == "involution":
            a, b = payload
            i = _find_triple(path, a, b, a)
            path = path[:i + 1] + path[i + 3:]
        else:
            raise AssertionError(f"unknown move {tag}")
        path = [x for i, x in enumerate(path) if i == 0 or x != path[i - 1]]
    want = [p1, p3] if p1 != p3 else [p1]
    assert path == want, "certificate does not normalize the composite"


def _find_triple(path, a, b, c):
    for i in range(len(path) - 2):
        if path[i] == a and path[i + 1] == b and path[i + 2] == c:
            return i
    raise AssertionError("move pattern not found on path")


# ---------------------------------------------------------------------------
# Weyl symmetry helpers for the exhaustive suites

def translate_parabolic(p: ParabolicRootSet, w) -> ParabolicRootSet:
    rs = p.rs
    return ParabolicRootSet(rs, rs.apply_perm(w, p.levi_mask),
                            rs.apply_perm(w, p.nil_mask))


@lru_cache(maxsize=None)
def levi_stabilizer(rs: RootSystem, levi_mask: int):
    return tuple(w for w in rs.weyl_group()
                 if rs.apply_perm(w, levi_mask) == levi_mask)


@lru_cache(maxsize=None)
def parabolic_orbit_reps(rs: RootSystem, levi: LeviSet):
    """Representatives of the Stab_W(levi)-orbits on parabolics with the
    given Levi.  Triples with first component canonicalized this way cover
    all triples up to the diagonal Weyl symmetry."""
    ps = parabolics_with_levi(rs, levi)
    stab = levi_stabilizer(rs, levi.mask)
    seen = set()
    reps = []
    for p in ps:
        if p in seen:
            continue
        reps.append(p)
        for w in stab:
            seen.add(translate_parabolic(p, w))
    return tuple(reps)
