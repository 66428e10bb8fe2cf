"""Exact rational linear algebra used throughout the package.

Everything here works over `fractions.Fraction` (or plain ints for the
fraction-free routines) and never touches floating point.  These are the
low-frequency paths; the per-probe hot loops live in the kernel backends.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Optional, Sequence


def _as_fraction_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix via plain Gaussian elimination."""
    m = _as_fraction_rows(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] / inv
                for j in range(c, ncols):
                    m[i][j] -= f * m[r][j]
        r += 1
        if r == nrows:
            break
    return r


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Optional[list[Fraction]], int, int]:
    """Solve A x = b exactly.

    Returns (solution, rank(A), rank([A|b])).  The solution is a particular
    one with free variables set to zero, or None when the system is
    inconsistent (detected by the rank gap, not by any tolerance).
    """
    m = _as_fraction_rows(rows)
    b = [Fraction(x) for x in rhs]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        b[r], b[piv] = b[piv], b[r]
        inv = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] / inv
                for j in range(c, ncols):
                    m[i][j] -= f * m[r][j]
                b[i] -= f * b[r]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    rank_a = r
    rank_aug = rank_a + (1 if any(b[i] != 0 for i in range(r, nrows)) else 0)
    if rank_aug > rank_a:
        return None, rank_a, rank_aug
    x = [Fraction(0)] * ncols
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        acc = b[k]
        for j in range(c + 1, ncols):
            if m[k][j] != 0:
                acc -= m[k][j] * x[j]
        x[c] = acc / m[k][c]
    return x, rank_a, rank_aug


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the right nullspace of a rational matrix."""
    m = _as_fraction_rows(rows)
    if not m:
        return []
    nrows, ncols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                for j in range(c, ncols):
                    m[i][j] -= f * m[r][j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for k, c in enumerate(pivots):
            v[c] = -m[k][fc]
        basis.append(v)
    return basis


def invert(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    n = len(rows)
    m = _as_fraction_rows(rows)
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        f = m[c][c]
        m[c] = [v / f for v in m[c]]
        inv[c] = [v / f for v in inv[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                for j in range(n):
                    m[i][j] -= f * m[c][j]
                    inv[i][j] -= f * inv[c][j]
    return inv


def matvec(rows: Sequence[Sequence], vec: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(v) for a, v in zip(row, vec)), Fraction(0)) for row in rows]


def det_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def leading_principal_minors(rows: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """The n leading principal minors of a rational square matrix, exactly.

    One fraction-free elimination pass: the k-th Bareiss pivot equals the
    k-th leading minor.  A zero pivot makes that minor zero; the remaining
    ones are then computed by explicit determinants (rare path, only hit by
    degenerate inputs).
    """
    n = len(rows)
    den = 1
    for row in rows:
        for x in row:
            f = Fraction(x)
            den = den * f.denominator // gcd(den, f.denominator)
    m = [[int(Fraction(x) * den) for x in row] for row in rows]
    minors: list[Fraction] = []
    prev = 1
    for k in range(n):
        piv = m[k][k]
        minors.append(Fraction(piv, den ** (k + 1)))
        if piv == 0:
            for kk in range(k + 1, n):
                sub = [[int(Fraction(rows[i][j]) * den) for j in range(kk + 1)] for i in range(kk + 1)]
                minors.append(Fraction(det_bareiss(sub), den ** (kk + 1)))
            return minors
        if k < n - 1:
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = piv
    return minors


class RowSpace:
    """Incrementally maintained row space over the rationals.

    Rows are stored as primitive integer vectors in echelon form, which keeps
    the arithmetic fraction-free during span saturation (orbit closures,
    module splits).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @staticmethod
    def _primitive(v: list[int]) -> list[int]:
        g = 0
        for x in v:
            g = gcd(g, abs(x))
        if g > 1:
            v = [x // g for x in v]
        for x in v:
            if x != 0:
                if x < 0:
                    v = [-y for y in v]
                break
        return v

    def _reduce(self, vec: Sequence) -> list[int]:
        dens = [Fraction(x).denominator for x in vec]
        den = 1
        for d in dens:
            den = den * d // gcd(den, d)
        v = [int(Fraction(x) * den) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                a, b = row[p], v[p]
                v = [a * x - b * y for x, y in zip(v, row)]
        return self._primitive(v)

    def contains(self, vec: Sequence) -> bool:
        return not any(self._reduce(vec))

    def add(self, vec: Sequence) -> bool:
        """Insert a vector; returns True when the dimension grew."""
        v = self._reduce(vec)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.rows.insert(pos, v)
        self.pivots.insert(pos, piv)
        # Keep fully reduced echelon form: clear the new pivot column in every
        # other row (v already has zeros at all previously pivotal columns,
        # so the existing pivots survive this).
        for i in range(len(self.rows)):
            if i != pos and self.rows[i][piv] != 0:
                a, b = v[piv], self.rows[i][piv]
                self.rows[i] = self._primitive([a * x - b * y for x, y in zip(self.rows[i], v)])
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x) for x in row] for row in self.rows]


def orthogonalize(vectors: Sequence[Sequence], pair: Callable) -> list[list[Fraction]]:
    """Gram-Schmidt a list of coordinate vectors against a bilinear form.

    `pair(u, v)` must return an exact Fraction.  Output vectors span the same
    space, are pairwise `pair`-orthogonal and stay rational throughout.
    """
    out: list[list[Fraction]] = []
    for vec in vectors:
        v = [Fraction(x) for x in vec]
        for w in out:
            c = pair(v, w) / pair(w, w)
            if c != 0:
                v = [a - c * b for a, b in zip(v, w)]
        if any(x != 0 for x in v):
            out.append(v)
    return out
