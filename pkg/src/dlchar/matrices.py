"""Dense n x n matrix arithmetic over tower levels, tuple-encoded.

Matrices are tuples of row-tuples of packed field codes, so they hash and
sort directly.  Small levels get cached add/mul lookup tables; everything
here is exact.
"""

from __future__ import annotations

from functools import lru_cache

from .fields import FieldSpec

_TABLE_CAP = 4096


@lru_cache(maxsize=None)
def field_tables(spec: FieldSpec):
    """(add, mul, neg, inv) lookup tables for a small level."""
    size = spec.size
    assert size <= _TABLE_CAP, "field too large for dense tables"
    add = [[spec.add(a, b) for b in range(size)] for a in range(size)]
    mul = [[spec.mul(a, b) for b in range(size)] for a in range(size)]
    neg = [spec.neg(a) for a in range(size)]
    inv = [0] + [spec.inv(a) for a in range(1, size)]
    return add, mul, neg, inv


class MatrixOps:
    """Matrix operations over one field level."""

    def __init__(self, spec: FieldSpec, n: int):
        self.spec = spec
        self.n = n
        if spec.size <= _TABLE_CAP:
            self.add_t, self.mul_t, self.neg_t, self.inv_t = field_tables(spec)
        else:
            self.add_t = self.mul_t = self.neg_t = self.inv_t = None

    # -- scalars -------------------------------------------------------------

    def sadd(self, a, b):
        return self.add_t[a][b] if self.add_t is not None else self.spec.add(a, b)

    def smul(self, a, b):
        return self.mul_t[a][b] if self.mul_t is not None else self.spec.mul(a, b)

    def sneg(self, a):
        return self.neg_t[a] if self.neg_t is not None else self.spec.neg(a)

    def sinv(self, a):
        return self.inv_t[a] if self.inv_t is not None else self.spec.inv(a)

    # -- matrices ------------------------------------------------------------

    def identity(self):
        n = self.n
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def mul(self, A, B):
        n = self.n
        sadd, smul = self.sadd, self.smul
        out = []
        for i in range(n):
            Ai = A[i]
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = sadd(acc, smul(Ai[k], B[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def vec_mul(self, A, v):
        n = self.n
        sadd, smul = self.sadd, self.smul
        return tuple(
            _fold(sadd, (smul(A[i][k], v[k]) for k in range(n))) for i in range(n))

    def scalar_mul(self, c, A):
        smul = self.smul
        return tuple(tuple(smul(c, x) for x in row) for row in A)

    def det(self, A):
        n = self.n
        M = [list(r) for r in A]
        sadd, smul, sneg, sinv = self.sadd, self.smul, self.sneg, self.sinv
        det = 1
        for c in range(n):
            piv = None
            for r in range(c, n):
                if M[r][c]:
                    piv = r
                    break
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                det = sneg(det)
            det = smul(det, M[c][c])
            ic = sinv(M[c][c])
            for r in range(c + 1, n):
                if M[r][c]:
                    f = smul(M[r][c], ic)
                    for k in range(c, n):
                        M[r][k] = sadd(M[r][k], sneg(smul(f, M[c][k])))
        return det

    def inv(self, A):
        n = self.n
        M = [list(r) + [1 if i == j else 0 for j in range(n)]
             for i, r in enumerate(A)]
        sadd, smul, sneg, sinv = self.sadd, self.smul, self.sneg, self.sinv
        for c in range(n):
            piv = None
            for r in range(c, n):
                if M[r][c]:
                    piv = r
                    break
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
            ic = sinv(M[c][c])
            M[c] = [smul(ic, x) for x in M[c]]
            for r in range(n):
                if r != c and M[r][c]:
                    f = M[r][c]
                    M[r] = [sadd(x, sneg(smul(f, y))) for x, y in zip(M[r], M[c])]
        return tuple(tuple(row[n:]) for row in M)

    def charpoly(self, A):
        """det(xI - A), little-endian coefficient list of field codes."""
        n = self.n
        rows = [[self._xminus(A[i][j], i == j) for j in range(n)] for i in range(n)]
        return self._polydet(rows)

    def _xminus(self, a, diag):
        # polynomial entry x*[diag] - a  (list of codes, little-endian)
        return [self.sneg(a), 1] if diag else [self.sneg(a)]

    def _polydet(self, rows):
        n = len(rows)
        if n == 1:
            return rows[0][0]
        out = None
        for j in range(n):
            entry = rows[0][j]
            if all(c == 0 for c in entry):
                continue
            minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
            term = self._polymul(entry, self._polydet(minor))
            if j % 2:
                term = [self.sneg(c) for c in term]
            out = term if out is None else self._polyadd(out, term)
        return out if out is not None else [0]

    def _polymul(self, a, b):
        out = [0] * (len(a) + len(b) - 1)
        sadd, smul = self.sadd, self.smul
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = sadd(out[i + j], smul(ai, bj))
        return out

    def _polyadd(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        sadd = self.sadd
        return [sadd(x, y) for x, y in zip(a, b)] + list(a[len(b):])

    def poly_gcd(self, a, b):
        a, b = list(a), list(b)

        def trim(v):
            while v and v[-1] == 0:
                v.pop()
            return v

        a, b = trim(a), trim(b)
        while b:
            inv = self.sinv(b[-1])
            bm = [self.smul(inv, c) for c in b]
            while len(a) >= len(bm):
                c = a[-1]
                if c:
                    off = len(a) - len(bm)
                    for i in range(len(bm)):
                        a[off + i] = self.sadd(a[off + i],
                                               self.sneg(self.smul(c, bm[i])))
                a.pop()
                a = trim(a)
                if not a:
                    break
            a, b = b, trim(a)
        return a

    def poly_derivative(self, a):
        p = self.spec.p
        out = []
        for i in range(1, len(a)):
            c = a[i]
            m = i % p
            acc = 0
            for _ in range(m):
                acc = self.sadd(acc, c)
            out.append(acc)
        return out

    def is_squarefree(self, poly):
        d = self.poly_derivative(poly)
        if all(c == 0 for c in d):
            return False
        g = self.poly_gcd(list(poly), d)
        return len(g) == 1

    def conjugate(self, g, x):
        """g x g^{-1}."""
        return self.mul(self.mul(g, x), self.inv(g))

    def map_entries(self, A, f):
        return tuple(tuple(f(x) for x in row) for row in A)


def _fold(op, it):
    acc = 0
    for v in it:
        acc = op(acc, v)
    return acc


def matrix_order(ops: MatrixOps, A, cap: int = 10_000) -> int:
    I = ops.identity()
    x = A
    for k in range(1, cap + 1):
        if x == I:
            return k
        x = ops.mul(x, A)
    raise RuntimeError("order cap exceeded")
