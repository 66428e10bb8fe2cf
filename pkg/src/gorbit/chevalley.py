"""Compact real form with integer structure constants.

The basis is {iH_j : j simple} + {A_a, B_a : a positive}, where A_a and B_a
are the antihermitian combinations of the two root vectors of +-a.  Brackets
close over the integers: root-vector products carry the constants N(a,b) =
+-(p+1), fixed by giving every extraspecial pair a positive sign and
propagating through the zero-sum triple and four-root identities.

`killing_form` is -Killing, positive definite, computed once per algebra as
the trace form of ad.ad on this basis and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .linalg import orthogonalize
from .rootsys import Root, RootSystem, root_string


class AlgebraMismatch(ValueError):
    pass


class NonOrthogonalBasis(ValueError):
    pass


def _exact_int(x: Fraction) -> int:
    assert x.denominator == 1, x
    return int(x)


@dataclass(frozen=True, slots=True)
class Generator:
    """Basis generator: kind 'IH' with a 1-based simple index, or 'A'/'B'
    with a positive root."""

    kind: str
    root: Optional[Root] = None
    index: Optional[int] = None

    def __repr__(self) -> str:
        if self.kind == "IH":
            return f"iH{self.index}"
        return f"{self.kind}{self.root.coeffs}"


class StructureConstants:
    """The integer constants N(a, b) for [e_a, e_b] = N(a,b) e_{a+b}.

    Signs follow the extraspecial-pair normalization: for each non-simple
    positive root g, the decomposition g = d + e with d minimal gets
    N(d, e) = p + 1 > 0, and everything else is derived from
    N(b,a) = -N(a,b), N(-a,-b) = -N(a,b) and the Jacobi identity.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._pos_index = {r: i for i, r in enumerate(rs.positive_roots)}
        self._memo: dict[tuple[Root, Root], int] = {}

    def _order_key(self, r: Root):
        return (r.height, r.coeffs)

    def _extraspecial(self, gamma: Root) -> tuple[Root, Root]:
        for delta in self.rs.positive_roots:
            if self._order_key(delta) >= self._order_key(gamma):
                break
            eps = gamma.minus(delta)
            if eps in self._pos_index or (eps.is_positive and self.rs.contains(eps)):
                return delta, eps
        raise AssertionError(f"no decomposition of {gamma}")

    def n(self, a: Root, b: Root) -> int:
        """N(a, b); zero when a + b is not a root."""
        s = a.plus(b)
        if not self.rs.contains(s):
            return 0
        key = (a, b)
        if key in self._memo:
            return self._memo[key]
        val = self._compute(a, b)
        self._memo[key] = val
        return val

    def _compute(self, a: Root, b: Root) -> int:
        rs = self.rs
        if a.is_positive and b.is_positive:
            return self._positive_pair(a, b)
        if not a.is_positive and not b.is_positive:
            return -self.n(-a, -b)
        if not a.is_positive:
            return -self.n(b, a)
        # a positive, b negative; a - b' is a root (b = -b').
        bp = -b
        d = rs.half_length
        s = a.minus(bp)
        if s.is_positive:
            return _exact_int(-(d(s) / d(a)) * self.n(bp, s))
        sp = -s
        return _exact_int(-(d(sp) / d(bp)) * self.n(a, sp))

    def _positive_pair(self, a: Root, b: Root) -> int:
        rs = self.rs
        if self._order_key(a) > self._order_key(b):
            return -self._positive_pair(b, a)
        gamma = a.plus(b)
        delta, eps = self._extraspecial(gamma)
        if (a, b) == (delta, eps):
            p, _ = root_string(rs, delta, eps)
            return p + 1
        d = rs.half_length
        t1 = t2 = 0
        if rs.contains(eps.minus(a)):
            t1 = self.n(eps, -a) * self.n(delta, eps.minus(a))
        if rs.contains(a.minus(delta)):
            t2 = self.n(-a, delta) * self.n(eps, delta.minus(a))
        num = -(d(gamma) / d(b)) * (t1 + t2)
        return _exact_int(Fraction(num) / self.n(delta, eps))

    def table(self) -> dict[tuple[Root, Root], int]:
        """All ordered pairs with a root sum, materialized."""
        out = {}
        for a in self.rs.roots:
            for b in self.rs.roots:
                if self.rs.contains(a.plus(b)):
                    out[(a, b)] = self.n(a, b)
        return out

    def to_json(self) -> list[dict]:
        """Debug dump of the full table, deterministically ordered."""
        items = sorted(
            self.table().items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())
        )
        return [
            {"alpha": list(a.coeffs), "beta": list(b.coeffs), "N": n}
            for (a, b), n in items
        ]


def compute_structure_constants(rs: RootSystem) -> StructureConstants:
    return StructureConstants(rs)


class AlgebraElement:
    """Sparse exact-rational combination of compact-basis generators."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "CompactAlgebra", terms: dict[Generator, Fraction]):
        self.algebra = algebra
        self.terms = {g: Fraction(c) for g, c in terms.items() if c != 0}

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, Fraction(0)) + c
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, Fraction(0)) - c
        return AlgebraElement(self.algebra, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {g: -c for g, c in self.terms.items()})

    def __rmul__(self, scalar) -> "AlgebraElement":
        s = Fraction(scalar)
        return AlgebraElement(self.algebra, {g: s * c for g, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.terms.items(), key=lambda kv: repr(kv[0])))))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, g: Generator) -> Fraction:
        return self.terms.get(g, Fraction(0))

    def _check(self, other: "AlgebraElement"):
        if self.algebra is not other.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def dense(self) -> list[Fraction]:
        out = [Fraction(0)] * self.algebra.dim
        idx = self.algebra.index
        for g, c in self.terms.items():
            out[idx[g]] = c
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for g in self.algebra.generators:
            if g in self.terms:
                bits.append(f"{self.terms[g]}*{g!r}")
        return " + ".join(bits)


class CompactAlgebra:
    """The compact real form of the simple algebra over a root system."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.constants = compute_structure_constants(rs)
        gens: list[Generator] = [Generator("IH", index=j) for j in range(1, rs.rank + 1)]
        for alpha in rs.positive_roots:
            gens.append(Generator("A", root=alpha))
            gens.append(Generator("B", root=alpha))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.index: dict[Generator, int] = {g: i for i, g in enumerate(gens)}
        self.dim = len(gens)
        self._pair_table = self._build_pair_table()
        self._killing: Optional[tuple[list[list[Fraction]], list[Fraction]]] = None
        self._flat: Optional[tuple] = None

    # -- construction ------------------------------------------------------

    def _build_pair_table(self) -> dict[tuple[int, int], tuple[tuple[int, int], ...]]:
        rs = self.rs
        n = self.constants.n
        idx = self.index
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}

        def put(i: int, j: int, target: Generator, coeff: int):
            if coeff:
                table.setdefault((i, j), []).append((idx[target], coeff))

        def a_signed(gamma: Root) -> tuple[Generator, int]:
            if gamma.is_positive:
                return Generator("A", root=gamma), 1
            return Generator("A", root=-gamma), -1

        for j in range(1, rs.rank + 1):
            ih = idx[Generator("IH", index=j)]
            for beta in rs.positive_roots:
                c = rs.coroot_pairing(beta, j)
                a_i, b_i = idx[Generator("A", root=beta)], idx[Generator("B", root=beta)]
                if c:
                    table.setdefault((ih, a_i), []).append((b_i, c))
                    table.setdefault((a_i, ih), []).append((b_i, -c))
                    table.setdefault((ih, b_i), []).append((a_i, -c))
                    table.setdefault((b_i, ih), []).append((a_i, c))

        pos = rs.positive_roots
        for alpha in pos:
            ia, ib = idx[Generator("A", root=alpha)], idx[Generator("B", root=alpha)]
            for j, c in enumerate(rs.coroot_coords(alpha)):
                if c:
                    h = idx[Generator("IH", index=j + 1)]
                    table.setdefault((ia, ib), []).append((h, 2 * c))
                    table.setdefault((ib, ia), []).append((h, -2 * c))
            for beta in pos:
                if beta == alpha:
                    continue
                ja, jb = idx[Generator("A", root=beta)], idx[Generator("B", root=beta)]
                nsum = n(alpha, beta)
                ndiff = n(alpha, -beta)
                su = alpha.plus(beta)
                di = alpha.minus(beta)
                # [A_alpha, A_beta]
                if nsum:
                    put(ia, ja, Generator("A", root=su), nsum)
                if ndiff:
                    g, sg = a_signed(di)
                    put(ia, ja, g, -ndiff * sg)
                # [A_alpha, B_beta] and the transpose
                if nsum:
                    put(ia, jb, Generator("B", root=su), nsum)
                    put(jb, ia, Generator("B", root=su), -nsum)
                if ndiff:
                    babs = di if di.is_positive else -di
                    put(ia, jb, Generator("B", root=babs), ndiff)
                    put(jb, ia, Generator("B", root=babs), -ndiff)
                # [B_alpha, B_beta]
                if nsum:
                    put(ib, jb, Generator("A", root=su), -nsum)
                if ndiff:
                    g, sg = a_signed(di)
                    put(ib, jb, g, ndiff * sg * -1)
        return {k: tuple(v) for k, v in table.items()}

    # -- kernels -----------------------------------------------------------

    def flat_table(self):
        """Flattened bracket table (offsets/targets/coeffs) for the kernels."""
        if self._flat is None:
            from array import array

            dim = self.dim
            offs = [0] * (dim * dim + 1)
            tgts: list[int] = []
            cfs: list[int] = []
            for i in range(dim):
                for j in range(dim):
                    for t, c in self._pair_table.get((i, j), ()):
                        tgts.append(t)
                        cfs.append(c)
                    offs[i * dim + j + 1] = len(tgts)
            self._flat = (array("q", offs), array("q", tgts), array("q", cfs))
        return self._flat

    # -- operations --------------------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def element(self, terms: dict[Generator, Fraction]) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def from_dense(self, coords: Sequence[Fraction]) -> AlgebraElement:
        return AlgebraElement(
            self, {g: Fraction(c) for g, c in zip(self.generators, coords) if c}
        )

    def gen_ih(self, j: int) -> AlgebraElement:
        return AlgebraElement(self, {Generator("IH", index=j): Fraction(1)})

    def gen_a(self, alpha: Root) -> AlgebraElement:
        """A_alpha for any root; A_{-a} = -A_a."""
        if alpha.is_positive:
            return AlgebraElement(self, {Generator("A", root=alpha): Fraction(1)})
        return AlgebraElement(self, {Generator("A", root=-alpha): Fraction(-1)})

    def gen_b(self, alpha: Root) -> AlgebraElement:
        """B_alpha for any root; B_{-a} = B_a."""
        a = alpha if alpha.is_positive else -alpha
        return AlgebraElement(self, {Generator("B", root=a): Fraction(1)})

    def ih_coweight(self, coords: Sequence[Fraction]) -> AlgebraElement:
        """i*h for h given in simple-coroot coordinates."""
        return AlgebraElement(
            self,
            {Generator("IH", index=j + 1): Fraction(c) for j, c in enumerate(coords) if c},
        )

    def bracket(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraMismatch("bracket arguments from a different algebra")
        idx = self.index
        table = self._pair_table
        gens = self.generators
        acc: dict[int, Fraction] = {}
        for g1, c1 in x.terms.items():
            i1 = idx[g1]
            for g2, c2 in y.terms.items():
                entry = table.get((i1, idx[g2]))
                if entry:
                    c12 = c1 * c2
                    for t, c in entry:
                        acc[t] = acc.get(t, Fraction(0)) + c12 * c
        return AlgebraElement(self, {gens[t]: c for t, c in acc.items() if c != 0})

    def _killing_data(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        """Cached trace-form data: the Cartan block B(iH_i, iH_j) plus the
        diagonal over the root generators.  Root generators are pairwise
        B-orthogonal and orthogonal to the Cartan (verified in tests via
        `killing_pair_full`); the Cartan block itself is full."""
        if self._killing is None:
            l = self.rs.rank
            block = [
                [self.killing_pair_full(i, j) for j in range(l)] for i in range(l)
            ]
            diag = [Fraction(0)] * self.dim
            for i in range(l):
                diag[i] = block[i][i]
            for i in range(l, self.dim):
                diag[i] = self.killing_pair_full(i, i)
            self._killing = (block, diag)
        return self._killing

    def killing_diag(self) -> list[Fraction]:
        """B(g, g) per generator (the Cartan block is not diagonal; use
        killing_form for mixed Cartan pairs)."""
        return self._killing_data()[1]

    def killing_cartan_block(self) -> list[list[Fraction]]:
        return self._killing_data()[0]

    def killing_pair_full(self, i: int, j: int) -> Fraction:
        """B(g_i, g_j) straight from the trace definition (test oracle)."""
        table = self._pair_table
        acc = Fraction(0)
        for b in range(self.dim):
            for t, c in table.get((j, b), ()):
                for t2, c2 in table.get((i, t), ()):
                    if t2 == b:
                        acc += c * c2
        return -acc

    def killing_form(self, x: AlgebraElement, y: AlgebraElement) -> Fraction:
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraMismatch("killing_form arguments from a different algebra")
        block, diag = self._killing_data()
        idx = self.index
        acc = Fraction(0)
        for g, c in x.terms.items():
            if g.kind == "IH":
                row = block[g.index - 1]
                for g2, c2 in y.terms.items():
                    if g2.kind == "IH":
                        acc += c * c2 * row[g2.index - 1]
            else:
                cy = y.terms.get(g)
                if cy is not None:
                    acc += c * cy * diag[idx[g]]
        return acc

    def project(self, x: AlgebraElement, subspace: Iterable[AlgebraElement]) -> AlgebraElement:
        """B-orthogonal projection onto the span of a pairwise-orthogonal basis."""
        basis = list(subspace)
        for i, u in enumerate(basis):
            for v in basis[i + 1 :]:
                if self.killing_form(u, v) != 0:
                    raise NonOrthogonalBasis(f"basis vectors {i} and {basis.index(v)} not B-orthogonal")
        out = self.zero()
        for v in basis:
            c = self.killing_form(x, v) / self.killing_form(v, v)
            if c != 0:
                out = out + c * v
        return out


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.algebra.bracket(x, y)


def killing_form(x: AlgebraElement, y: AlgebraElement) -> Fraction:
    return x.algebra.killing_form(x, y)


def project(x: AlgebraElement, subspace: Iterable[AlgebraElement]) -> AlgebraElement:
    return x.algebra.project(x, subspace)


@lru_cache(maxsize=None)
def _algebra_cache(rs_key) -> CompactAlgebra:
    from .rootsys import RootSystemType, build_root_system

    return CompactAlgebra(build_root_system(RootSystemType(*rs_key)))


def build_compact_algebra(rs: RootSystem) -> CompactAlgebra:
    """One shared CompactAlgebra per algebra type."""
    return _algebra_cache((rs.type.family, rs.type.rank))
