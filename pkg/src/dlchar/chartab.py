"""Irreducible character tables by the Dixon-Schneider class-algebra
method: simultaneous eigenvectors of the class multiplication matrices over
a prime field F_l with l = 1 mod exp(G), lifted to exact cyclotomics via
power maps and discrete roots of unity.

The lift is exact: the eigenvalue multiplicities n_{kj} are genuine
nonnegative integers below l, so the cyclotomic values are reconstructed
with no rounding anywhere.  All character-table invariants are asserted
over the cyclotomics at construction time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt

from .classfun import (ClassFunction, class_constants, inner_product,
                       inner_product_hermitian)
from .cyclo import Cyclotomic, root_of_unity
from .fields import prime_factors, is_prime
from .groups import GroupTable

SPLIT_SEED = 20240611  # recorded in reports; fixed for reproducibility


class NoSplittingPrime(Exception):
    """No usable prime l = 1 mod exp(G) below the cap."""


def splitting_prime(exponent: int, order: int, cap: int = 2**31) -> int:
    """Smallest prime l = 1 mod exp(G) with l > 2 sqrt(|G|) and l > 2|G|^(1/2)
    margins for unique integer lifts."""
    lower = max(2 * isqrt(order) + 1, exponent + 1, 3)
    l = ((lower - 1) // exponent + 1) * exponent + 1
    while l < cap:
        if is_prime(l):
            return l
        l += exponent
    raise NoSplittingPrime(f"no prime = 1 mod {exponent} below {cap}")


def _primitive_root(l: int) -> int:
    fac = prime_factors(l - 1)
    for g in range(2, l):
        if all(pow(g, (l - 1) // p, l) != 1 for p in fac):
            return g
    raise RuntimeError("no primitive root found")


def _sqrt_mod(a: int, l: int) -> int:
    """Tonelli-Shanks square root mod an odd prime."""
    a %= l
    if a == 0:
        return 0
    assert pow(a, (l - 1) // 2, l) == 1, "not a quadratic residue"
    if l % 4 == 3:
        return pow(a, (l + 1) // 4, l)
    q, s = l - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (l - 1) // 2, l) == 1:
        z += 1
    m, c, t, r = s, pow(z, q, l), pow(a, q, l), pow(a, (q + 1) // 2, l)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % l
            i += 1
        b = pow(c, 1 << (m - i - 1), l)
        m, c, t, r = i, b * b % l, t * b * b % l, r * b % l
    return r


# -- polynomial helpers mod l ------------------------------------------------

def _pmul(a, b, l):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % l
    while out and out[-1] == 0:
        out.pop()
    return out


def _pmod(a, m, l):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], l - 2, l)
    while len(a) > dm:
        c = a[-1] * inv % l
        if c:
            off = len(a) - 1 - dm
            for i in range(len(m) - 1):
                a[off + i] = (a[off + i] - c * m[i]) % l
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _pgcd(a, b, l):
    a, b = list(a), list(b)
    while b:
        a = _pmod(a, b, l)
        a, b = b, a
    if a:
        inv = pow(a[-1], l - 2, l)
        a = [x * inv % l for x in a]
    return a


def _ppow_mod(base, e, m, l):
    r = [1]
    b = _pmod(base, m, l)
    while e:
        if e & 1:
            r = _pmod(_pmul(r, b, l), m, l)
        b = _pmod(_pmul(b, b, l), m, l)
        e >>= 1
    return r


def _poly_roots(f, l, rng) -> list[int]:
    """All roots in F_l of a polynomial that splits completely."""
    f = list(f)
    inv = pow(f[-1], l - 2, l)
    f = [c * inv % l for c in f]
    xq = _ppow_mod([0, 1], l, f, l)
    lin = _pgcd([(x - y) % l for x, y in
                 zip(xq + [0] * 2, [0, 1] + [0] * len(xq))], f, l) if False else None
    # gcd(x^l - x, f): x^l mod f minus x
    d = list(xq)
    while len(d) < 2:
        d.append(0)
    d[1] = (d[1] - 1) % l
    while d and d[-1] == 0:
        d.pop()
    g = _pgcd(d, f, l) if d else f
    roots = []

    def split(h):
        deg = len(h) - 1
        if deg == 0:
            return
        if deg == 1:
            roots.append((-h[0]) * pow(h[1], l - 2, l) % l)
            return
        while True:
            delta = rng.randrange(l)
            probe = _ppow_mod([delta, 1], (l - 1) // 2, h, l)
            probe = list(probe)
            if probe:
                probe[0] = (probe[0] - 1) % l
            else:
                probe = [(-1) % l]
            while probe and probe[-1] == 0:
                probe.pop()
            if not probe:
                continue
            h1 = _pgcd(probe, h, l)
            if 0 < len(h1) - 1 < deg:
                h2 = _pdiv_exact(h, h1, l)
                split(h1)
                split(h2)
                return

    split(g)
    return sorted(roots)


def _pdiv_exact(num, den, l):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    inv = pow(den[-1], l - 2, l)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] * inv % l
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] = (num[i + j] - c * dj) % l
    return out


def _charpoly_mod(A, l):
    """det(xI - A) mod l by evaluation and Lagrange interpolation."""
    n = len(A)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        M = [[(x * (i == j) - A[i][j]) % l for j in range(n)] for i in range(n)]
        ys.append(_det_mod(M, l))
    # Lagrange interpolation
    coeffs = [0] * (n + 1)
    for i, xi in enumerate(xs):
        num = [1]
        den = 1
        for j, xj in enumerate(xs):
            if i == j:
                continue
            num = _pmul(num, [(-xj) % l, 1], l)
            den = den * (xi - xj) % l
        scale = ys[i] * pow(den, l - 2, l) % l
        for k, c in enumerate(num):
            coeffs[k] = (coeffs[k] + scale * c) % l
    return coeffs


def _det_mod(M, l):
    n = len(M)
    M = [row[:] for row in M]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = (-det) % l
        det = det * M[c][c] % l
        inv = pow(M[c][c], l - 2, l)
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv % l
                M[r] = [(a - f * b) % l for a, b in zip(M[r], M[c])]
    return det % l


def _nullspace_mod(M, l):
    n = len(M)
    m = len(M[0])
    A = [row[:] for row in M]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], l - 2, l)
        A[r] = [x * inv % l for x in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % l for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * m
        v[fcol] = 1
        for i, c in enumerate(pivots):
            v[c] = (-A[i][fcol]) % l
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------

@dataclass(eq=False)
class CharacterTable:
    group: GroupTable
    irreducibles: list
    degrees: list
    prime: int
    seed: int

    @property
    def num(self):
        return len(self.irreducibles)

    def decompose(self, f: ClassFunction):
        """Multiplicities <f, conj(chi_i)> (bilinear against conjugates,
        i.e. the Hermitian pairing); reconstruction is asserted."""
        assert f.group is self.group
        out = []
        for i, chi in enumerate(self.irreducibles):
            m = inner_product_hermitian(f, chi)
            if not m.is_zero():
                out.append((i, m))
        recon = None
        for i, m in out:
            term = ClassFunction(self.group, tuple(
                v * m for v in self.irreducibles[i].values))
            recon = term if recon is None else recon + term
        if recon is None:
            assert f.is_zero()
        else:
            assert recon == f, "decomposition does not reconstruct"
        return out


def _class_matrices(g: GroupTable):
    a = class_constants(g)
    nc = g.num_classes
    return [[[a[i][j][k] for k in range(nc)] for j in range(nc)]
            for i in range(nc)]


@lru_cache(maxsize=None)
def character_table(g: GroupTable, seed: int = SPLIT_SEED) -> CharacterTable:
    nc = g.num_classes
    l = splitting_prime(g.exponent, g.order)
    rng = random.Random(seed)
    mats = _class_matrices(g)

    # simultaneous eigenspace refinement over F_l
    spaces = [[[1 if i == j else 0 for j in range(nc)] for i in range(nc)]]
    for i in range(nc):
        if len(spaces) == nc:
            break
        A = mats[i]
        new_spaces = []
        for S in spaces:
            if len(S) == 1:
                new_spaces.append(S)
                continue
            # restriction of A to the row space of S in its own coordinates
            SA = [[sum(S[r][k] * A[c][k] for k in range(nc)) % l
                   for c in range(nc)] for r in range(len(S))]
            pivots = _pivot_columns(S, l)
            R = [[_solve_coords(S, SA[r], pivots, l)[t] for t in range(len(S))]
                 for r in range(len(S))]
            roots = _poly_roots(_charpoly_mod(R, l), l, rng)
            assert roots, "class matrix charpoly failed to split"
            covered = 0
            for z in roots:
                # coordinates transform by right multiplication with R, so
                # eigen-coordinates are the left eigenvectors: null(R^T - z)
                B = [[(R[v][u] - z * (u == v)) % l for v in range(len(S))]
                     for u in range(len(S))]
                vecs = [[sum(vec[t] * S[t][c] for t in range(len(S))) % l
                         for c in range(nc)]
                        for vec in _nullspace_mod(B, l)]
                if vecs:
                    covered += len(vecs)
                    new_spaces.append(_echelon(vecs, l))
            assert covered == len(S), "eigenspaces do not span the block"
        spaces = new_spaces
    assert len(spaces) == nc, "class algebra did not split"

    # the simultaneous eigenvectors are the central characters omega_k =
    # |C_k| chi(g_k) / chi(1), normalized by omega = 1 at the identity
    ident = g.class_index(g.identity)
    inv_class = g.inverse_class
    sizes = [c.size for c in g.classes]
    rows = []
    for S in spaces:
        v = S[0]
        assert v[ident] % l != 0, "central character vanishes at identity"
        inv = pow(v[ident], l - 2, l)
        om = [x * inv % l for x in v]
        s = 0
        for k in range(nc):
            s = (s + om[k] * om[inv_class[k]] * pow(sizes[k], l - 2, l)) % l
        d2 = g.order * pow(s, l - 2, l) % l
        d = _sqrt_mod(d2, l)
        d = min(d, l - d)
        assert 1 <= d * d <= g.order
        chi_mod = [d * om[k] * pow(sizes[k], l - 2, l) % l for k in range(nc)]
        rows.append((d, chi_mod))

    # lift to cyclotomics via power maps
    w = _primitive_root(l)
    irreducibles = []
    degrees = []
    for d, chi_mod in rows:
        values = []
        for k in range(nc):
            m = g.classes[k].order
            z = pow(w, (l - 1) // m, l)
            zinv = pow(z, l - 2, l)
            minv = pow(m, l - 2, l)
            val = Cyclotomic.zero()
            for j in range(m):
                acc = 0
                for t in range(m):
                    acc = (acc + chi_mod[g.power_class(k, t)]
                           * pow(zinv, j * t, l)) % l
                n_kj = acc * minv % l
                assert n_kj <= g.order, "multiplicity lift out of range"
                if n_kj:
                    val = val + root_of_unity(m, j) * n_kj
            values.append(val)
        irreducibles.append(ClassFunction(g, tuple(values)))
        degrees.append(d)

    order = sorted(range(nc), key=lambda i: (
        degrees[i], [_cyc_key(v) for v in irreducibles[i].values]))
    irreducibles = [irreducibles[i] for i in order]
    degrees = [degrees[i] for i in order]
    table = CharacterTable(g, irreducibles, degrees, l, seed)
    _verify_table(table)
    return table


def _cyc_key(v: Cyclotomic):
    return (v.conductor, tuple(sorted(v.coeffs.items())))


def _pivot_columns(S, l):
    pivots = []
    used = set()
    for row in S:
        for c, x in enumerate(row):
            if x % l and c not in used:
                pivots.append(c)
                used.add(c)
                break
    return pivots


def _solve_coords(S, target, pivots, l):
    """Coordinates of target in the row space of S (S in echelon-ish form
    with the given pivot columns)."""
    t = list(target)
    coords = [0] * len(S)
    for idx, (row, pc) in enumerate(zip(S, pivots)):
        if t[pc]:
            f = t[pc] * pow(row[pc], l - 2, l) % l
            coords[idx] = f
            t = [(x - f * y) % l for x, y in zip(t, row)]
    assert all(x % l == 0 for x in t), "vector not in row space"
    return coords


def _echelon(rows, l):
    """Reduced row echelon form over F_l, zero rows dropped."""
    A = [row[:] for row in rows]
    m = len(A[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(A)) if A[i][c] % l), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], l - 2, l)
        A[r] = [x * inv % l for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % l for x, y in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r]]


def _verify_table(t: CharacterTable):
    g = t.group
    nc = g.num_classes
    assert sum(d * d for d in t.degrees) == g.order, "sum of degrees^2"
    for d in t.degrees:
        assert g.order % d == 0, "degree does not divide |G|"
    one = Cyclotomic.one()
    zero = Cyclotomic.zero()
    for i in range(nc):
        assert t.irreducibles[i].at_element(g.identity) == \
            Cyclotomic.from_rational(t.degrees[i])
        for j in range(i, nc):
            v = inner_product_hermitian(t.irreducibles[i], t.irreducibles[j])
            assert v == (one if i == j else zero), "row orthogonality"
    for a in range(nc):
        for b in range(nc):
            acc = zero
            for chi in t.irreducibles:
                acc = acc + chi.values[a] * chi.values[b].conjugate()
            want = Cyclotomic.from_rational(
                g.classes[a].centralizer_order) if a == b else zero
            assert acc == want, "column orthogonality"
