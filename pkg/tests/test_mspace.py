from fractions import Fraction

import pytest

from gorbit.catalog import catalog_diagrams
from gorbit.flag import build_flag, lowest_highest
from gorbit.linalg import RowSpace
from gorbit.mspace import NotReducible, build_mspace, reducibility_report
from gorbit.rootsys import IndexOutOfRange

from conftest import space_of

# Diagrams with interesting mixes of quaternionic / real / dim-2 summands.
FOCUS = [("A", 2, (1, 2)), ("A", 2, (1,)), ("A", 3, (2,)), ("B", 2, (1,)), ("B", 2, (2,)), ("G", 2, (1,)), ("C", 3, (2,))]


def test_full_flag_a2_dimensions():
    m = space_of("A", 2, (1, 2))
    assert m.alg.dim == 8
    assert len(m.k1_basis) == 0
    assert len(m.s_basis) == 2
    assert m.dim_n == 8


def test_cp2_k1_is_rank_one():
    m = space_of("A", 2, (1,))
    assert len(m.s_basis) == 1
    kinds = sorted(repr(k) for k in m.k1_basis)
    assert len(m.k1_basis) == 3  # iH_{a2}, A_{a2}, B_{a2}
    assert m.dim_n == m.alg.dim - 3


@pytest.mark.parametrize("family,rank,painted", FOCUS)
def test_structural_invariants(family, rank, painted):
    m = space_of(family, rank, painted)
    alg = m.alg
    # s is B-orthogonal to k1 and commutes with it
    for sb in m.s_basis:
        for kb in m.k1_basis:
            assert alg.killing_form(sb, kb) == 0
            assert alg.bracket(sb, kb).is_zero
    # n is Ad(k1)-invariant
    for kb in m.k1_basis:
        for nb in m.n_basis:
            assert m.in_n(alg.bracket(kb, nb))
    # dim n = dim g - dim k1
    assert m.dim_n == alg.dim - len(m.k1_basis)


def test_projection_splits_orthogonally(rng):
    from conftest import random_element

    m = space_of("B", 2, (2,))
    alg = m.alg
    for _ in range(10):
        x = random_element(alg, rng)
        pn = m.project_n(x)
        pk = x - pn
        assert m.in_n(pn)
        for nb in m.n_basis:
            assert alg.killing_form(pk, nb) == 0
        for kb in m.k1_basis:
            assert alg.killing_form(pn, kb) == 0


class TestReducibility:
    def test_dim2_summands_reduce(self):
        m = space_of("G", 2, (1,))
        assert m.is_reducible(2)  # the doubled-t-root fiber is a single root
        sp = m.split_summand(2)
        assert [len(sp.n1_basis), len(sp.n2_basis)] == [1, 1]
        (a,) = sp.n1_basis
        (b,) = sp.n2_basis
        gens = {g.kind for g in a.terms} | {g.kind for g in b.terms}
        assert gens == {"A", "B"}

    def test_full_flag_everything_reduces(self):
        m = space_of("A", 2, (1, 2))
        for i in (1, 2, 3):
            assert m.is_reducible(i)
            assert not m.orbit_irreducibility_oracle(i)

    def test_quaternionic_fiber_stays_irreducible(self):
        # 4-dimensional summand over a rank-one isotropy: self-dual fiber
        # with an antisymmetric invariant form; both routes say irreducible.
        m = space_of("A", 2, (1,))
        assert m.fiber_self_dual(1)  # the weight-symmetry test alone passes
        sym, full = m._fiber_form(1)
        assert (sym, full) == (0, 1)
        assert not m.is_reducible(1)
        assert m.orbit_irreducibility_oracle(1)
        with pytest.raises(NotReducible):
            m.split_summand(1)

    def test_real_fiber_splits_in_halves(self):
        m = space_of("A", 3, (2,))
        sym, full = m._fiber_form(1)
        assert (sym, full) == (1, 1)
        assert m.is_reducible(1)
        sp = m.split_summand(1)
        assert len(sp.n1_basis) == len(sp.n2_basis) == m.summand_dim(1) // 2
        assert not m.orbit_irreducibility_oracle(1)

    def test_index_bounds(self):
        m = space_of("A", 2, (1,))
        with pytest.raises(IndexOutOfRange):
            m.is_reducible(2)


def test_split_halves_are_b_orthogonal_and_invariant():
    m = space_of("C", 3, (2,))
    alg = m.alg
    for i in (1, 2):
        sp = m.split_summand(i)
        for u in sp.n1_basis:
            for v in sp.n2_basis:
                assert alg.killing_form(u, v) == 0
        for basis in (sp.n1_basis, sp.n2_basis):
            span = RowSpace(m.summand_dim(i))
            for x in basis:
                span.add(m._summand_coords(i, x))
            for kb in m.k1_basis:
                for x in basis:
                    img = alg.bracket(kb, x)
                    assert span.contains(m._summand_coords(i, img))


def test_equivalence_map_bijective_for_every_admissible_index():
    for family, rank, painted, i in [("A", 3, (2,), 1), ("B", 2, (1,), 1), ("C", 3, (2,), 1), ("C", 3, (2,), 2)]:
        m = space_of(family, rank, painted)
        sp = m.split_summand(i)
        xi = m.flag.troots_plus[i - 1]
        d = m.summand_dim(i)
        n2_span = RowSpace(d)
        for x in sp.n2_basis:
            n2_span.add(m._summand_coords(i, x))
        for ppos, j in enumerate(m.flag.diagram.painted):
            if not xi.coords[ppos]:
                continue
            ih = m.s_basis_element(j)
            image = RowSpace(d)
            for x in sp.n1_basis:
                img = m.alg.bracket(ih, x)
                v = m._summand_coords(i, img)
                assert n2_span.contains(v)
                image.add(v)
            assert image.dim == len(sp.n1_basis)


@pytest.mark.parametrize("d", [d for d in catalog_diagrams() if d.algebra.rank <= 3], ids=str)
def test_extremal_pair_relation_propagates(d):
    m = build_mspace(build_flag(d))
    rs = m.flag.rs
    unp = m.flag.unpainted
    for i in range(1, m.s_count + 1):
        fiber = list(m.flag.fibers[m.flag.troots_plus[i - 1]])

        def a1(al):
            return tuple(rs.coroot_pairing(al, j) for j in unp)

        # when the extremal pair is weight-symmetric, every fiber root has a
        # partner with the opposite isotropy restriction
        if m.fiber_self_dual(i):
            for a in fiber:
                assert any(a1(a) == tuple(-w for w in a1(b)) for b in fiber)
        # conversely, any opposite pair anywhere in the fiber forces the
        # extremal pair to be weight-symmetric
        found = any(
            a1(a) == tuple(-w for w in a1(b)) for a in fiber for b in fiber
        )
        if found:
            lo, hi = lowest_highest(m.flag, i)
            assert a1(lo) == tuple(-w for w in a1(hi))


def test_reducibility_report_structure():
    m = space_of("G", 2, (1,))
    rep = reducibility_report(m)
    assert [r["reducible"] for r in rep] == [False, True, False]
    assert all(r["agree"] for r in rep)


def test_cross_summand_equivalence_scan_logs_findings():
    # The block metric shapes assume no equivariant maps between distinct
    # summands.  The scan detects where that assumption is only an
    # assumption: with trivial isotropy every map qualifies, and the two
    # quaternionic summands of the G2 space are genuinely equivalent.
    from gorbit.mspace import cross_summand_intertwiner_dim

    m = space_of("A", 2, (1, 2))
    assert cross_summand_intertwiner_dim(m, 1, 2) == 4  # trivial isotropy

    m = space_of("G", 2, (1,))
    findings = []
    for i in range(1, m.s_count + 1):
        for j in range(i + 1, m.s_count + 1):
            if m.summand_dim(i) == m.summand_dim(j) <= 12:
                d = cross_summand_intertwiner_dim(m, i, j)
                if d:
                    findings.append((i, j, d))
    assert findings == [(1, 3, 4)]
    print(f"\ncross-summand equivalences on G2(1,): {findings}")
