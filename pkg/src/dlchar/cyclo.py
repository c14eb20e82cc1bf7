"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored in the power basis of Q[x]/Phi_N(x) with big-integer
Fraction coefficients, always reduced mod Phi_N and auto-descended to the
smallest conductor, so structural equality is semantic equality.  This is
the coefficient field standing in for the l-adic numbers in every character
computation; no floating point appears anywhere in the value path.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = ["Cyclotomic", "root_of_unity", "cyclotomic_polynomial", "euler_phi"]


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            out -= out // d
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, little-endian, by exact division of x^n - 1."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divide_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i] = q
        if q:
            for j, dj in enumerate(den):
                num[i + j] -= q * dj
    assert all(c == 0 for c in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row t-phi(n) is x^t mod Phi_n for t in [phi(n), n), as basis coeffs."""
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    rows = []
    cur = [Fraction(0)] * phi
    if phi > 0:
        cur = [Fraction(0)] * phi
    # start from x^phi = -(lower part of Phi_n)
    for t in range(phi, n):
        if t == phi:
            cur = [Fraction(-c) for c in mod[:phi]]
        else:
            prev = rows[-1]
            cur = [Fraction(0)] + [x for x in prev[:-1]]
            top = prev[phi - 1]
            if top:
                cur = [c - top * mod[i] for i, c in enumerate(cur)]
        rows.append(tuple(cur))
    return tuple(rows)


@lru_cache(maxsize=None)
def _subfield_basis_matrix(n: int, d: int):
    """Columns: zeta_d^i (i < phi(d)) written in the power basis at
    conductor n, for d | n."""
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    step = n // d
    cols = []
    for i in range(phi_d):
        vec = _reduce_exponent_vector(n, {(i * step) % n: Fraction(1)})
        cols.append([vec.get(j, Fraction(0)) for j in range(phi_n)])
    return cols


def _reduce_exponent_vector(n: int, terms: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce a zeta_n exponent vector (exponents mod n) to the power basis."""
    phi = euler_phi(n)
    rows = _reduction_rows(n)
    out: dict[int, Fraction] = {}
    for j, c in terms.items():
        if not c:
            continue
        j %= n
        if j < phi:
            out[j] = out.get(j, Fraction(0)) + c
        else:
            row = rows[j - phi]
            for i, r in enumerate(row):
                if r:
                    out[i] = out.get(i, Fraction(0)) + c * r
    return {j: c for j, c in out.items() if c}


def _solve_rational(matrix_cols, target, phi_n):
    """Solve sum_i x_i * col_i = target exactly; None if inconsistent."""
    ncols = len(matrix_cols)
    aug = [[matrix_cols[c][r] for c in range(ncols)] + [target[r]]
           for r in range(phi_n)]
    piv_rows = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, phi_n):
            if aug[i][c]:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(phi_n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append((r, c))
        r += 1
    sol = [Fraction(0)] * ncols
    for row, col in piv_rows:
        sol[col] = aug[row][ncols]
    # consistency
    for i in range(phi_n):
        lhs = sum(sol[c] * matrix_cols[c][i] for c in range(ncols))
        if lhs != target[i]:
            return None
    return sol


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


class Cyclotomic:
    """An element of Q(zeta_N), canonical across conductors."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: dict[int, Fraction], reduced=False):
        if not reduced:
            coeffs = _reduce_exponent_vector(conductor, coeffs)
            conductor, coeffs = _descend(conductor, coeffs)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(r) -> "Cyclotomic":
        r = Fraction(r)
        return Cyclotomic(1, {0: r} if r else {}, reduced=True)

    @staticmethod
    def zero() -> "Cyclotomic":
        return Cyclotomic(1, {}, reduced=True)

    @staticmethod
    def one() -> "Cyclotomic":
        return Cyclotomic.from_rational(1)

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return self.conductor == 1

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational (conductor {self.conductor})")
        return self.coeffs.get(0, Fraction(0))

    def as_integer(self) -> int:
        r = self.as_rational()
        if r.denominator != 1:
            raise ValueError(f"not an integer: {r}")
        return r.numerator

    def lift(self, n: int) -> dict[int, Fraction]:
        """Exponent vector at conductor n (self.conductor | n)."""
        assert n % self.conductor == 0
        step = n // self.conductor
        return {(j * step) % n: c for j, c in self.coeffs.items()}

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        n = _lcm(self.conductor, other.conductor)
        a, b = self.lift(n), other.lift(n)
        for j, c in b.items():
            a[j] = a.get(j, Fraction(0)) + c
        return Cyclotomic(n, a)

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.conductor, {j: -c for j, c in self.coeffs.items()},
                          reduced=True)

    def __sub__(self, other: "Cyclotomic") -> "Cyclotomic":
        return self + (-other)

    def __mul__(self, other) -> "Cyclotomic":
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        n = _lcm(self.conductor, other.conductor)
        a, b = self.lift(n), other.lift(n)
        out: dict[int, Fraction] = {}
        for j1, c1 in a.items():
            for j2, c2 in b.items():
                j = (j1 + j2) % n
                out[j] = out.get(j, Fraction(0)) + c1 * c2
        return Cyclotomic(n, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero")
        n = self.conductor
        if n == 1:
            return Cyclotomic.from_rational(1 / self.as_rational())
        phi = euler_phi(n)
        a = [self.coeffs.get(j, Fraction(0)) for j in range(phi)]
        m = [Fraction(c) for c in cyclotomic_polynomial(n)]
        inv = _poly_invmod(a, m)
        return Cyclotomic(n, {j: c for j, c in enumerate(inv) if c})

    def __truediv__(self, other: "Cyclotomic") -> "Cyclotomic":
        return self * other.inverse()

    def conjugate(self) -> "Cyclotomic":
        """The Galois element zeta -> zeta^{-1} (complex conjugation)."""
        n = self.conductor
        return Cyclotomic(n, {(-j) % n: c for j, c in self.coeffs.items()})

    def galois(self, k: int) -> "Cyclotomic":
        """zeta -> zeta^k for gcd(k, N) = 1."""
        n = self.conductor
        assert gcd(k, n) == 1
        return Cyclotomic(n, {(j * k) % n: c for j, c in self.coeffs.items()})

    # -- comparisons / hashing -----------------------------------------------

    def _key(self):
        return (self.conductor, tuple(sorted(self.coeffs.items())))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_zero():
            return "Cyc(0)"
        terms = []
        for j, c in sorted(self.coeffs.items()):
            if j == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z{self.conductor}^{j}")
        return "Cyc(" + " + ".join(terms) + ")"

    def to_json(self):
        """{"conductor": N, "terms": [[j, num, den], ...]} sorted by j."""
        return {"conductor": self.conductor,
                "terms": [[j, c.numerator, c.denominator]
                          for j, c in sorted(self.coeffs.items())]}


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _descend(n: int, coeffs: dict[int, Fraction]):
    """Smallest conductor d | n holding the value, with rewritten coeffs."""
    if not coeffs:
        return 1, {}
    if n == 1:
        return 1, coeffs
    phi_n = euler_phi(n)
    target = [coeffs.get(j, Fraction(0)) for j in range(phi_n)]
    for d in _divisors(n):
        if d == n:
            break
        # quick Galois-invariance filter: sigma_k for k = 1 mod d must fix
        invariant = True
        for k in range(2, n + 1):
            if gcd(k, n) == 1 and k % d == 1 % d:
                moved = _reduce_exponent_vector(
                    n, {(j * k) % n: c for j, c in coeffs.items()})
                if moved != coeffs:
                    invariant = False
                    break
        if not invariant:
            continue
        sol = _solve_rational(_subfield_basis_matrix(n, d), target, phi_n)
        if sol is not None:
            down = {j: c for j, c in enumerate(sol) if c}
            return _descend(d, down) if d < n else (d, down)
    return n, coeffs


def _poly_invmod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo m in Q[x], extended Euclid."""
    def trim(v):
        while v and not v[-1]:
            v.pop()
        return v

    def divmod_(num, den):
        num = list(num)
        q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1] / den[-1]
            q[i] = c
            if c:
                for j, dj in enumerate(den):
                    num[i + j] -= c * dj
        return trim(q), trim(num)

    r0, r1 = trim(list(m)), trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        prod = [Fraction(0)] * (len(q) + len(s1))
        for i, qi in enumerate(q):
            for j, sj in enumerate(s1):
                prod[i + j] += qi * sj
        s_new = [x - y for x, y in
                 zip(s0 + [Fraction(0)] * max(0, len(prod) - len(s0)),
                     prod + [Fraction(0)] * max(0, len(s0) - len(prod)))]
        s0, s1 = s1, trim(s_new)
    assert len(r0) == 1, "element not invertible mod Phi_N"
    c = r0[0]
    return [x / c for x in s0]


def root_of_unity(n: int, j: int = 1) -> Cyclotomic:
    """zeta_N^j in canonical form; root_of_unity(N, 0) = 1."""
    if n < 1:
        raise ValueError("conductor must be >= 1")
    return Cyclotomic(n, {j % n: Fraction(1)})
