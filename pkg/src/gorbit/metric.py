"""Invariant metric operators on the M-space tangent space.

A metric is specified blockwise: a symmetric positive-definite matrix giving
the inner product on the torus directions s (in the coweight basis), one
scalar per irreducible summand, and a (mu1, mu2, coupling) triple per split
summand.  The coupling scales the canonical equivalence n1 -> n2, realized
as the bracket with the distinguished coweight of the summand's t-root; the
reverse block carries the opposite sign, which is exactly what self-adjointness
with respect to the trace form requires.

`validate` compiles the block data into an exact operator and rejects
anything that is not positive definite, not self-adjoint, or not
Ad(K1)-equivariant.  No floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .chevalley import AlgebraElement
from .linalg import invert, leading_principal_minors
from .mspace import MSpace


class NotPositiveDefinite(ValueError):
    pass


class NotEquivariant(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class OutOfSubspace(ValueError):
    pass


@dataclass(frozen=True)
class ScalarBlock:
    lam: Fraction


@dataclass(frozen=True)
class SplitBlock:
    mu1: Fraction
    mu2: Fraction
    coupling: Fraction


SummandBlock = Union[ScalarBlock, SplitBlock]


@dataclass(frozen=True)
class MetricSpec:
    s_block: tuple[tuple[Fraction, ...], ...]
    summand_params: tuple[SummandBlock, ...]

    def to_json(self) -> dict:
        summands = []
        for i, blk in enumerate(self.summand_params, start=1):
            if isinstance(blk, ScalarBlock):
                summands.append({"id": i, "kind": "scalar", "lambda": str(blk.lam)})
            else:
                summands.append(
                    {
                        "id": i,
                        "kind": "split",
                        "mu1": str(blk.mu1),
                        "mu2": str(blk.mu2),
                        "coupling": str(blk.coupling),
                    }
                )
        return {
            "s_block": [[str(x) for x in row] for row in self.s_block],
            "summands": summands,
        }

    @staticmethod
    def from_json(data: dict) -> "MetricSpec":
        try:
            s_block = tuple(
                tuple(Fraction(x) for x in row) for row in data["s_block"]
            )
            blocks: list[SummandBlock] = []
            for entry in sorted(data["summands"], key=lambda e: e["id"]):
                if entry["kind"] == "scalar":
                    blocks.append(ScalarBlock(Fraction(entry["lambda"])))
                elif entry["kind"] == "split":
                    blocks.append(
                        SplitBlock(
                            Fraction(entry["mu1"]),
                            Fraction(entry["mu2"]),
                            Fraction(entry["coupling"]),
                        )
                    )
                else:
                    raise ShapeMismatch(f"unknown summand kind {entry['kind']!r}")
        except (KeyError, ValueError, TypeError) as exc:
            if isinstance(exc, ShapeMismatch):
                raise
            raise ShapeMismatch(f"malformed metric spec: {exc}") from exc
        return MetricSpec(s_block=s_block, summand_params=tuple(blocks))


class MetricOperator:
    """Compiled invariant operator: exact matrix action over the n basis."""

    def __init__(self, mspace: MSpace, spec: MetricSpec, matrix: list[list[Fraction]]):
        self.mspace = mspace
        self.spec = spec
        self.matrix = matrix

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        m = self.mspace
        try:
            coords = m.n_coords(x)
        except ValueError as exc:
            raise OutOfSubspace(str(exc)) from exc
        out = self._apply_coords(coords)
        return m.from_n_coords(out)

    def _apply_coords(self, coords: Sequence[Fraction]) -> list[Fraction]:
        mat = self.matrix
        n = len(mat)
        out = [Fraction(0)] * n
        for j, c in enumerate(coords):
            if c:
                col_j = c
                for i in range(n):
                    if mat[i][j]:
                        out[i] += mat[i][j] * col_j
        return out

    def eigenvalue_of(self, x: AlgebraElement) -> Optional[Fraction]:
        """The exact eigenvalue when x is an eigenvector, else None."""
        coords = self.mspace.n_coords(x)
        img = self._apply_coords(coords)
        lam = None
        for a, b in zip(coords, img):
            if a == 0:
                if b != 0:
                    return None
                continue
            r = b / a
            if lam is None:
                lam = r
            elif lam != r:
                return None
        return lam


def s_gram(m: MSpace) -> list[list[Fraction]]:
    """B-gram matrix of the s basis (the coweights are not orthogonal)."""
    return [
        [m.alg.killing_form(u, v) for v in m.s_basis] for u in m.s_basis
    ]


def standard_metric(m: MSpace) -> MetricOperator:
    """The operator of the bi-invariant inner product: the identity on n."""
    spec = MetricSpec(
        s_block=tuple(tuple(row) for row in s_gram(m)),
        summand_params=tuple(ScalarBlock(Fraction(1)) for _ in range(m.s_count)),
    )
    return validate(spec, m)


def scaled_standard_metric(m: MSpace, t: Fraction) -> MetricOperator:
    t = Fraction(t)
    spec = MetricSpec(
        s_block=tuple(tuple(t * x for x in row) for row in s_gram(m)),
        summand_params=tuple(ScalarBlock(t) for _ in range(m.s_count)),
    )
    return validate(spec, m)


def is_standard_multiple(spec: MetricSpec, m: MSpace) -> bool:
    """Is this metric a positive multiple of the trace-form metric?"""
    t = None
    for blk in spec.summand_params:
        if isinstance(blk, ScalarBlock):
            lam = blk.lam
        else:
            if blk.coupling != 0 or blk.mu1 != blk.mu2:
                return False
            lam = blk.mu1
        if t is None:
            t = lam
        elif t != lam:
            return False
    if t is None or t <= 0:
        return False
    gram = s_gram(m)
    r = len(gram)
    for a in range(r):
        for b in range(r):
            if spec.s_block[a][b] != t * gram[a][b]:
                return False
    return True


def validate(spec: MetricSpec, m: MSpace) -> MetricOperator:
    """Compile and certify a metric operator.

    Raises ShapeMismatch for structural problems, NotPositiveDefinite when a
    leading principal minor of the metric gram fails to be positive, and
    NotEquivariant (with the violating pair) when the operator does not
    commute with the isotropy action.
    """
    r = len(m.s_basis)
    if len(spec.s_block) != r or any(len(row) != r for row in spec.s_block):
        raise ShapeMismatch(f"s_block must be {r}x{r}")
    for a in range(r):
        for b in range(r):
            if spec.s_block[a][b] != spec.s_block[b][a]:
                raise ShapeMismatch("s_block must be symmetric")
    if len(spec.summand_params) != m.s_count:
        raise ShapeMismatch(
            f"expected {m.s_count} summand blocks, got {len(spec.summand_params)}"
        )

    dim = m.dim_n
    mat = [[Fraction(0)] * dim for _ in range(dim)]

    # s block: operator = G_s^{-1} @ s_block over the coweight basis.
    if r:
        gram = s_gram(m)
        op_s = _matmul(invert(gram), [list(row) for row in spec.s_block])
        for a in range(r):
            for b in range(r):
                mat[a][b] = op_s[a][b]

    for i, blk in enumerate(spec.summand_params, start=1):
        start, stop = m.summand_slices[i - 1]
        if isinstance(blk, ScalarBlock):
            if blk.lam <= 0:
                raise NotPositiveDefinite(f"summand {i}: scale must be positive")
            for p in range(start, stop):
                mat[p][p] = blk.lam
            continue
        split = m.summand_split_or_none(i)
        if split is None:
            raise ShapeMismatch(f"summand {i} is irreducible; split block not allowed")
        if blk.mu1 <= 0 or blk.mu2 <= 0:
            raise NotPositiveDefinite(f"summand {i}: mu1, mu2 must be positive")
        d = stop - start
        n1 = [m._summand_coords(i, x) for x in split.n1_basis]
        n2 = [m._summand_coords(i, x) for x in split.n2_basis]
        cols = [list(col) for col in n1 + n2]
        basis_mat = [[cols[c][rr] for c in range(d)] for rr in range(d)]
        inv = invert(basis_mat)
        p1 = [[Fraction(0)] * d for _ in range(d)]
        for c in range(len(n1)):
            for rr in range(d):
                for cc in range(d):
                    p1[rr][cc] += cols[c][rr] * inv[c][cc]
        p2 = [
            [Fraction(1 if a == b else 0) - p1[a][b] for b in range(d)] for a in range(d)
        ]
        ih = m.s_basis_element(m.split_map_painted_index(i))
        gens = m.summand_gens[i - 1]
        ad = [[Fraction(0)] * d for _ in range(d)]
        for p, g in enumerate(gens):
            img = m.alg.bracket(ih, m.alg.element({g: Fraction(1)}))
            v = m._summand_coords(i, img)
            for q in range(d):
                ad[q][p] = v[q]
        block = [
            [
                blk.mu1 * p1[a][b] + blk.mu2 * p2[a][b]
                for b in range(d)
            ]
            for a in range(d)
        ]
        if blk.coupling:
            diff = [[p1[a][b] - p2[a][b] for b in range(d)] for a in range(d)]
            cross = _matmul(ad, diff)
            for a in range(d):
                for b in range(d):
                    block[a][b] += blk.coupling * cross[a][b]
        for a in range(d):
            for b in range(d):
                if block[a][b]:
                    mat[start + a][start + b] = block[a][b]

    op = MetricOperator(m, spec, mat)
    check_self_adjoint_positive(op)
    check_equivariant(op)
    return op


def check_self_adjoint_positive(op: MetricOperator) -> None:
    """Exact certification: the metric gram <u,v> = B(op u, v) must be
    symmetric (self-adjointness) with positive leading principal minors."""
    m = op.mspace
    dim = m.dim_n
    metric_gram = _matmul(_n_gram(m), op.matrix)
    for a in range(dim):
        for b in range(a + 1, dim):
            if metric_gram[a][b] != metric_gram[b][a]:
                raise ShapeMismatch(
                    f"operator not self-adjoint on n-basis pair ({a}, {b})"
                )
    for k, mk in enumerate(leading_principal_minors(metric_gram), start=1):
        if mk <= 0:
            raise NotPositiveDefinite(f"leading principal minor {k} is {mk}")


def check_equivariant(op: MetricOperator) -> None:
    """Exact commutation with every isotropy generator on every basis
    direction; reports the violating pair."""
    m = op.mspace
    for ki, k in enumerate(m.k1_basis):
        for p, u in enumerate(m.n_basis):
            lhs = m.n_coords(m.alg.bracket(k, op.apply(u)), project=True)
            rhs = op._apply_coords(m.n_coords(m.alg.bracket(k, u), project=True))
            if lhs != rhs:
                raise NotEquivariant(
                    f"operator does not commute with k1 generator {ki} on n-basis {p}"
                )


def apply(op: MetricOperator, x: AlgebraElement) -> AlgebraElement:
    return op.apply(x)


def _matmul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    n, k, mcols = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * mcols for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            if ai[t]:
                bt = b[t]
                c = ai[t]
                row = out[i]
                for j in range(mcols):
                    if bt[j]:
                        row[j] += c * bt[j]
    return out


def _n_gram(m: MSpace) -> list[list[Fraction]]:
    """B-gram of the n basis: s block from the coweights, diagonal on the
    root generators."""
    dim = m.dim_n
    r = len(m.s_basis)
    out = [[Fraction(0)] * dim for _ in range(dim)]
    sg = s_gram(m)
    for a in range(r):
        for b in range(r):
            out[a][b] = sg[a][b]
    diag = m.alg.killing_diag()
    for p, gi in enumerate(m.n_ab_idx):
        out[r + p][r + p] = diag[gi]
    return out
