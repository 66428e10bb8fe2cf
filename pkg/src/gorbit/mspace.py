"""Tangent-space structure of the M-space G/K1.

The isotropy k of the flag manifold splits as s + k1 (torus direction plus
semisimple part); the M-space tangent space is n = s + m_1 + ... + m_s.  This
module builds exact bases for all the pieces, decides whether each summand
m_i stays irreducible under the smaller isotropy K1, and splits it into the
two equivalent halves when it does not.

Reducibility test: m_i is the realification of the complex fiber module W_i
spanned by the root vectors of the kappa-fiber.  It splits exactly when W_i
is self-dual of real type, i.e. when W_i carries a symmetric invariant
bilinear form.  Self-duality is visible on the lowest/highest roots of the
fiber (their restrictions to the Cartan of k1 are opposite); the symmetric /
antisymmetric distinction requires the small exact intertwiner solve in
`_fiber_form`.  A self-dual fiber with an antisymmetric form (quaternionic
type) stays irreducible over the reals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .chevalley import AlgebraElement, CompactAlgebra, Generator
from .flag import FlagManifold, lowest_highest, summand_basis
from .linalg import RowSpace, invert, nullspace
from .rootsys import IndexOutOfRange, Root, fundamental_coweight


class NotReducible(ValueError):
    pass


@dataclass
class SummandSplit:
    summand_index: int
    status: str  # "irreducible" | "split"
    n1_basis: Optional[list[AlgebraElement]] = None
    n2_basis: Optional[list[AlgebraElement]] = None
    seed_low: Optional[Root] = None
    seed_high: Optional[Root] = None


class MSpace:
    """Exact bases for g = k1 + n with n = s + m_1 + ... + m_s."""

    def __init__(self, flag: FlagManifold):
        self.flag = flag
        self.alg: CompactAlgebra = flag.algebra()
        rs = flag.rs
        alg = self.alg
        painted = flag.diagram.painted
        unpainted = flag.unpainted

        self.s_coords: list[tuple[Fraction, ...]] = [
            fundamental_coweight(rs, j) for j in painted
        ]
        self.s_basis: list[AlgebraElement] = [alg.ih_coweight(c) for c in self.s_coords]
        self.a1_basis: list[AlgebraElement] = [alg.gen_ih(j) for j in unpainted]
        self.k1_basis: list[AlgebraElement] = list(self.a1_basis)
        for phi in flag.R_K_plus:
            self.k1_basis.append(alg.gen_a(phi))
            self.k1_basis.append(alg.gen_b(phi))

        self.summand_gens: list[list[Generator]] = [
            summand_basis(flag, i) for i in range(1, flag.s_count + 1)
        ]
        self.n_basis: list[AlgebraElement] = list(self.s_basis)
        for gens in self.summand_gens:
            for g in gens:
                self.n_basis.append(alg.element({g: Fraction(1)}))

        l = rs.rank
        cart = alg.killing_cartan_block()
        # Projection of Cartan coordinates onto s along a1 (B-orthogonal).
        if unpainted:
            sub = [[cart[i - 1][j - 1] for j in unpainted] for i in unpainted]
            sub_inv = invert(sub)
            # proj_a1 = A (A^T G A)^-1 A^T G with A the unpainted inclusion
            atg = [[cart[i - 1][j] for j in range(l)] for i in unpainted]
            coeff = [
                [sum(sub_inv[r][k] * atg[k][j] for k in range(len(unpainted))) for j in range(l)]
                for r in range(len(unpainted))
            ]
            proj_a1 = [[Fraction(0)] * l for _ in range(l)]
            for r, i in enumerate(unpainted):
                for j in range(l):
                    proj_a1[i - 1][j] = coeff[r][j]
            self.proj_s_cartan = [
                [Fraction(1 if i == j else 0) - proj_a1[i][j] for j in range(l)] for i in range(l)
            ]
        else:
            self.proj_s_cartan = [
                [Fraction(1 if i == j else 0) for j in range(l)] for i in range(l)
            ]

        # s-coordinate extractor: t = (S^T G S)^-1 S^T G restricted to Cartan.
        r = len(painted)
        if r:
            stg = [
                [
                    sum(Fraction(self.s_coords[a][i]) * cart[i][j] for i in range(l))
                    for j in range(l)
                ]
                for a in range(r)
            ]
            sgs = [
                [sum(stg[a][i] * self.s_coords[b][i] for i in range(l)) for b in range(r)]
                for a in range(r)
            ]
            sgs_inv = invert(sgs)
            self.s_coord_map = [
                [sum(sgs_inv[a][k] * stg[k][j] for k in range(r)) for j in range(l)]
                for a in range(r)
            ]
        else:
            self.s_coord_map = []

        # Generator index layout.
        idx = alg.index
        self.n_ab_idx: list[int] = []
        self.summand_slices: list[tuple[int, int]] = []
        pos = len(painted)
        for gens in self.summand_gens:
            start = pos
            for g in gens:
                self.n_ab_idx.append(idx[g])
                pos += 1
            self.summand_slices.append((start, pos))
        self.dim_n = pos
        self.k1_ab_idx: list[int] = []
        for phi in flag.R_K_plus:
            self.k1_ab_idx.append(idx[Generator("A", root=phi)])
            self.k1_ab_idx.append(idx[Generator("B", root=phi)])

        self._splits: dict[int, SummandSplit] = {}
        self._action_cache: dict[int, list[list[list[Fraction]]]] = {}

    # -- coordinates -------------------------------------------------------

    def cartan_coords(self, x: AlgebraElement) -> list[Fraction]:
        out = [Fraction(0)] * self.flag.rs.rank
        for g, c in x.terms.items():
            if g.kind == "IH":
                out[g.index - 1] = c
        return out

    def n_coords(self, x: AlgebraElement, *, project: bool = False) -> list[Fraction]:
        """Coordinates of x over n_basis.

        With project=False, x must lie in n exactly (a1 or R_K components
        raise ValueError); with project=True the B-orthogonal projection onto
        n is taken first.
        """
        cart = self.cartan_coords(x)
        svec = [
            sum(row[j] * cart[j] for j in range(len(cart))) for row in self.s_coord_map
        ]
        if not project:
            resid = list(cart)
            for a, c in enumerate(svec):
                for j in range(len(cart)):
                    resid[j] -= c * Fraction(self.s_coords[a][j])
            if any(resid):
                raise ValueError("element has a k1 Cartan component")
        out = svec
        coords = [Fraction(0)] * len(self.n_ab_idx)
        lookup = {gi: p for p, gi in enumerate(self.n_ab_idx)}
        for g, c in x.terms.items():
            if g.kind == "IH":
                continue
            gi = self.alg.index[g]
            p = lookup.get(gi)
            if p is None:
                if not project:
                    raise ValueError("element has a k1 root component")
            else:
                coords[p] = c
        return out + coords

    def from_n_coords(self, coords: Sequence[Fraction]) -> AlgebraElement:
        x = self.alg.zero()
        for c, b in zip(coords[: len(self.s_basis)], self.s_basis):
            if c:
                x = x + Fraction(c) * b
        gens = self.alg.generators
        for c, gi in zip(coords[len(self.s_basis) :], self.n_ab_idx):
            if c:
                x = x + self.alg.element({gens[gi]: Fraction(c)})
        return x

    def project_n(self, x: AlgebraElement) -> AlgebraElement:
        """B-orthogonal projection of any algebra element onto n."""
        return self.from_n_coords(self.n_coords(x, project=True))

    def project_k1(self, x: AlgebraElement) -> AlgebraElement:
        return x - self.project_n(x)

    def in_n(self, x: AlgebraElement) -> bool:
        try:
            self.n_coords(x)
            return True
        except ValueError:
            return False

    # -- summands ----------------------------------------------------------

    @property
    def s_count(self) -> int:
        return self.flag.s_count

    def summand_dim(self, i: int) -> int:
        return len(self.summand_gens[i - 1])

    def summand_elements(self, i: int) -> list[AlgebraElement]:
        return [self.alg.element({g: Fraction(1)}) for g in self.summand_gens[i - 1]]

    def k1_action_matrices(self, i: int) -> list[list[list[Fraction]]]:
        """Matrices of ad(k) on m_i over its generator basis, one per k1
        basis element."""
        if i not in self._action_cache:
            gens = self.summand_gens[i - 1]
            cols = {g: p for p, g in enumerate(gens)}
            mats = []
            for k in self.k1_basis:
                mat = [[Fraction(0)] * len(gens) for _ in range(len(gens))]
                for p, g in enumerate(gens):
                    img = self.alg.bracket(k, self.alg.element({g: Fraction(1)}))
                    for g2, c in img.terms.items():
                        q = cols.get(g2)
                        assert q is not None, "k1 action left the summand"
                        mat[q][p] = c
                mats.append(mat)
            self._action_cache[i] = mats
        return self._action_cache[i]

    def _orbit_span(self, i: int, seed: Sequence[Fraction]) -> RowSpace:
        """Span closure of a vector of m_i under repeated ad(k1)."""
        d = self.summand_dim(i)
        mats = self.k1_action_matrices(i)
        span = RowSpace(d)
        span.add(seed)
        frontier = [list(seed)]
        while frontier:
            new = []
            for v in frontier:
                for mat in mats:
                    w = [
                        sum(mat[r][c] * v[c] for c in range(d) if v[c]) for r in range(d)
                    ]
                    if any(w) and span.add(w):
                        new.append(w)
            frontier = new
        return span

    # -- reducibility ------------------------------------------------------

    def _fiber_weights(self, i: int) -> list[tuple[int, ...]]:
        flag = self.flag
        fiber = flag.fibers[flag.troots_plus[i - 1]]
        unp = flag.unpainted
        return [tuple(flag.rs.coroot_pairing(a, j) for j in unp) for a in fiber]

    def _fiber_form(self, i: int) -> tuple[int, int]:
        """(dim of symmetric invariant forms, dim of all invariant forms) of
        the complex fiber module of summand i."""
        flag = self.flag
        rs = flag.rs
        n = self.alg.constants.n
        fiber = list(flag.fibers[flag.troots_plus[i - 1]])
        d = len(fiber)
        pos_of = {a: p for p, a in enumerate(fiber)}
        weights = self._fiber_weights(i)

        # Action matrices of e_{+-phi} for the simple generators of k1.
        mats: list[list[list[int]]] = []
        for j in flag.unpainted:
            phi = rs.simple_root(j)
            for sgn in (1, -1):
                g = phi if sgn == 1 else -phi
                mat = [[0] * d for _ in range(d)]
                for p, a in enumerate(fiber):
                    t = a.plus(g)
                    q = pos_of.get(t)
                    if q is not None:
                        mat[q][p] = n(g, a)
                mats.append(mat)

        # Symmetric unknowns F[p][q] supported on weight(p)+weight(q)=0.
        zero = tuple(0 for _ in flag.unpainted)
        sym_pairs = [
            (p, q)
            for p in range(d)
            for q in range(p, d)
            if tuple(x + y for x, y in zip(weights[p], weights[q])) == zero
        ]
        full_pairs = [
            (p, q)
            for p in range(d)
            for q in range(d)
            if tuple(x + y for x, y in zip(weights[p], weights[q])) == zero
        ]

        def solve_dim(pairs, symmetric: bool) -> int:
            if not pairs:
                return 0
            col = {pq: c for c, pq in enumerate(pairs)}

            def coeff_at(F_entry_row, p, q, val):
                if symmetric and p > q:
                    p, q = q, p
                c = col.get((p, q))
                if c is not None:
                    F_entry_row[c] += val

            rows = []
            for mat in mats:
                for i_ in range(d):
                    for j_ in range(d):
                        row = [0] * len(pairs)
                        # (rho^T F + F rho)[i][j] = sum_k rho[k][i] F[k][j] + F[i][k] rho[k][j]
                        for k in range(d):
                            if mat[k][i_]:
                                coeff_at(row, k, j_, mat[k][i_])
                            if mat[k][j_]:
                                coeff_at(row, i_, k, mat[k][j_])
                        if any(row):
                            rows.append(row)
            if not rows:
                return len(pairs)
            return len(nullspace(rows))

        return solve_dim(sym_pairs, True), solve_dim(full_pairs, False)

    def fiber_self_dual(self, i: int) -> bool:
        """Self-duality of the fiber module, read off the extremal roots:
        opposite restrictions to the Cartan of k1, equal values on s."""
        lo, hi = lowest_highest(self.flag, i)
        rs = self.flag.rs
        for j in self.flag.unpainted:
            if rs.coroot_pairing(lo, j) != -rs.coroot_pairing(hi, j):
                return False
        for c in self.s_coords:
            if rs.eval_on_cartan(lo, c) != rs.eval_on_cartan(hi, c):
                return False
        return True

    def is_reducible(self, i: int) -> bool:
        """Does m_i split under Ad(K1)?

        True iff the fiber module is self-dual (the lowest/highest root
        relation) and of real type (carries a symmetric invariant form).
        """
        if not 1 <= i <= self.s_count:
            raise IndexOutOfRange(f"summand index {i} out of 1..{self.s_count}")
        if not self.fiber_self_dual(i):
            return False
        sym_dim, full_dim = self._fiber_form(i)
        # a self-dual irreducible fiber carries exactly one invariant form;
        # anything else would mean the structure theory broke down upstream
        assert full_dim == 1, (self.flag.diagram, i, sym_dim, full_dim)
        return sym_dim > 0

    def orbit_irreducibility_oracle(self, i: int) -> bool:
        """Brute-force check: True (irreducible) iff every seed generates all
        of m_i under span closure by ad(k1).

        Seeds are the basis generators plus the extremal-pair combinations
        A_lo -+ A_hi and B_lo +- B_hi; a proper orbit from any of them
        exhibits an invariant subspace directly.
        """
        if not 1 <= i <= self.s_count:
            raise IndexOutOfRange(f"summand index {i} out of 1..{self.s_count}")
        d = self.summand_dim(i)
        seeds: list[list[Fraction]] = [
            [Fraction(1 if p == q else 0) for p in range(d)] for q in range(d)
        ]
        lo, hi = lowest_highest(self.flag, i)
        if lo != hi:
            gens = self.summand_gens[i - 1]
            pos = {g: p for p, g in enumerate(gens)}
            for kind, s1 in (("A", -1), ("A", 1), ("B", -1), ("B", 1)):
                v = [Fraction(0)] * d
                v[pos[Generator(kind, root=lo)]] = Fraction(1)
                v[pos[Generator(kind, root=hi)]] = Fraction(s1)
                seeds.append(v)
        return all(self._orbit_span(i, seed).dim == d for seed in seeds)

    def split_summand(self, i: int) -> SummandSplit:
        """Decompose a reducible summand into its two equivalent halves by
        span closure of the extremal seeds."""
        if not 1 <= i <= self.s_count:
            raise IndexOutOfRange(f"summand index {i} out of 1..{self.s_count}")
        if i in self._splits:
            return self._splits[i]
        if not self.is_reducible(i):
            raise NotReducible(f"summand {i} of {self.flag.diagram} is Ad(K1)-irreducible")
        lo, hi = lowest_highest(self.flag, i)
        gens = self.summand_gens[i - 1]
        d = len(gens)
        alg = self.alg
        if lo == hi:
            split = SummandSplit(
                summand_index=i,
                status="split",
                n1_basis=[alg.gen_a(lo)],
                n2_basis=[alg.gen_b(lo)],
                seed_low=lo,
                seed_high=hi,
            )
        else:
            pos = {g: p for p, g in enumerate(gens)}

            def seed_vec(sign: int) -> list[Fraction]:
                v = [Fraction(0)] * d
                v[pos[Generator("A", root=lo)]] = Fraction(1)
                v[pos[Generator("A", root=hi)]] = Fraction(sign)
                return v

            # A_lo + A_{-hi} = A_lo - A_hi and A_lo - A_{-hi} = A_lo + A_hi
            span1 = self._orbit_span(i, seed_vec(-1))
            span2 = self._orbit_span(i, seed_vec(+1))
            assert span1.dim == span2.dim == d // 2, (
                self.flag.diagram,
                i,
                span1.dim,
                span2.dim,
            )
            both = RowSpace(d)
            for row in span1.basis() + span2.basis():
                both.add(row)
            assert both.dim == d, "halves do not fill the summand"

            def to_elems(span: RowSpace) -> list[AlgebraElement]:
                out = []
                for row in span.basis():
                    x = alg.zero()
                    for c, g in zip(row, gens):
                        if c:
                            x = x + alg.element({g: Fraction(c)})
                    out.append(x)
                return out

            split = SummandSplit(
                summand_index=i,
                status="split",
                n1_basis=to_elems(span1),
                n2_basis=to_elems(span2),
                seed_low=lo,
                seed_high=hi,
            )
        # No invariant proper subspace inside either half: every basis seed
        # of a half must regenerate that half.
        for basis in (split.n1_basis, split.n2_basis):
            coords = [self._summand_coords(i, x) for x in basis]
            for v in coords:
                assert self._orbit_span(i, v).dim == len(basis), "half is not irreducible"
        self._splits[i] = split
        return split

    def summand_split_or_none(self, i: int) -> Optional[SummandSplit]:
        if self.is_reducible(i):
            return self.split_summand(i)
        return None

    def _summand_coords(self, i: int, x: AlgebraElement) -> list[Fraction]:
        gens = self.summand_gens[i - 1]
        pos = {g: p for p, g in enumerate(gens)}
        out = [Fraction(0)] * len(gens)
        for g, c in x.terms.items():
            out[pos[g]] = c
        return out

    def split_map_painted_index(self, i: int) -> int:
        """Painted index j (1-based into the simple roots) whose coweight
        gives the canonical equivalence n1 -> n2 on summand i: the smallest
        painted node with a nonzero coefficient in the t-root."""
        xi = self.flag.troots_plus[i - 1]
        for ppos, j in enumerate(self.flag.diagram.painted):
            if xi.coords[ppos]:
                return j
        raise AssertionError("t-root with zero coordinates")

    def s_basis_element(self, painted_j: int) -> AlgebraElement:
        return self.s_basis[self.flag.diagram.painted.index(painted_j)]


@lru_cache(maxsize=None)
def _mspace_cache(d) -> MSpace:
    from .flag import build_flag

    return MSpace(build_flag(d))


def build_mspace(f: FlagManifold) -> MSpace:
    return _mspace_cache(f.diagram)


def is_reducible(m: MSpace, i: int) -> bool:
    return m.is_reducible(i)


def split_summand(m: MSpace, i: int) -> SummandSplit:
    return m.split_summand(i)


def orbit_irreducibility_oracle(m: MSpace, i: int) -> bool:
    return m.orbit_irreducibility_oracle(i)


def cross_summand_intertwiner_dim(m: MSpace, i: int, j: int) -> int:
    """dim Hom_{k1}(m_i, m_j) over the reals, by exact nullspace solve.

    The block structure of the admitted metrics assumes distinct summands
    carry no equivariant coupling; a nonzero dimension here is a finding
    worth logging (the metric validator rejects such couplings regardless,
    since they never appear in the admitted block shapes).
    """
    di, dj = m.summand_dim(i), m.summand_dim(j)
    acts_i = m.k1_action_matrices(i)
    acts_j = m.k1_action_matrices(j)
    if not acts_i:
        # trivial isotropy: every linear map is equivariant
        return di * dj
    rows = []
    for ai, aj in zip(acts_i, acts_j):
        for r in range(dj):
            for c in range(di):
                row = [Fraction(0)] * (dj * di)
                # (aj @ T - T @ ai)[r][c] = 0
                for k in range(dj):
                    if aj[r][k]:
                        row[k * di + c] += aj[r][k]
                for k in range(di):
                    if ai[k][c]:
                        row[r * di + k] -= ai[k][c]
                if any(row):
                    rows.append(row)
    if not rows:
        return di * dj
    return len(nullspace(rows))


def reducibility_report(m: MSpace) -> list[dict]:
    """Per-summand comparison of the algebraic criterion against the orbit
    oracle; disagreement is surfaced, never reconciled."""
    out = []
    for i in range(1, m.s_count + 1):
        red = m.is_reducible(i)
        oracle_irred = m.orbit_irreducibility_oracle(i)
        out.append(
            {
                "summand": i,
                "dim": m.summand_dim(i),
                "reducible": red,
                "oracle_irreducible": oracle_irred,
                "agree": red != oracle_irred,
            }
        )
    return out
