import random

import pytest

from gorbit import _ops_py
from gorbit._kernel import BACKEND, kernel_backend
from gorbit.chevalley import build_compact_algebra
from gorbit.rootsys import RootSystemType, build_root_system

try:
    from gorbit import _ops_c
except ImportError:
    _ops_c = None

BACKENDS = [_ops_py] + ([_ops_c] if _ops_c is not None else [])


def table_of(family, rank):
    alg = build_compact_algebra(build_root_system(RootSystemType(family, rank)))
    return alg, alg.flat_table()


def test_backend_reported():
    assert kernel_backend() == BACKEND in ("c", "python")


@pytest.mark.skipif(_ops_c is None, reason="compiled kernel not built")
class TestBackendEquivalence:
    def test_bracket_and_ad(self):
        alg, (offs, tgts, cfs) = table_of("C", 3)
        rng = random.Random(4)
        for _ in range(20):
            x = [rng.randint(-30, 30) for _ in range(alg.dim)]
            y = [rng.randint(-30, 30) for _ in range(alg.dim)]
            assert _ops_py.brk(offs, tgts, cfs, alg.dim, x, y) == _ops_c.brk(
                offs, tgts, cfs, alg.dim, x, y
            )
            a = _ops_py.ad_cols(offs, tgts, cfs, alg.dim, x)
            b = _ops_c.ad_cols(offs, tgts, cfs, alg.dim, x)
            assert a == b
            w = [rng.randint(-9, 9) for _ in range(alg.dim)]
            assert _ops_py.dots_cols(a, alg.dim, w) == _ops_c.dots_cols(b, alg.dim, w)

    def test_bareiss_ranks(self):
        rng = random.Random(5)
        for _ in range(60):
            nr, nc = rng.randint(1, 10), rng.randint(1, 8)
            rows = [[rng.randint(-7, 7) for _ in range(nc + 1)] for _ in range(nr)]
            assert _ops_py.bareiss_ranks(rows, nc) == _ops_c.bareiss_ranks(rows, nc)

    def test_bareiss_rank_deficient_with_column_skips(self):
        # low-rank products force skipped pivot columns mid-elimination; the
        # pure backend asserts every fraction-free division stays exact
        rng = random.Random(6)
        from gorbit.linalg import rank as frac_rank

        for _ in range(40):
            nr, nc, r = rng.randint(2, 9), rng.randint(2, 7), rng.randint(1, 2)
            left = [[rng.randint(-5, 5) for _ in range(r)] for _ in range(nr)]
            right = [[rng.randint(-5, 5) for _ in range(nc)] for _ in range(r)]
            a = [
                [sum(left[i][k] * right[k][j] for k in range(r)) for j in range(nc)]
                for i in range(nr)
            ]
            rhs_sol = [rng.randint(-3, 3) for _ in range(nc)]
            b = [sum(a[i][j] * rhs_sol[j] for j in range(nc)) for i in range(nr)]
            rows = [a[i] + [b[i]] for i in range(nr)]
            got_py = _ops_py.bareiss_ranks(rows, nc)
            got_c = _ops_c.bareiss_ranks(rows, nc)
            assert got_py == got_c
            ra, raug = got_py
            assert ra == raug == frac_rank(a)  # consistent system
            rows_bad = [a[i] + [b[i] + (1 if i == nr - 1 else 0)] for i in range(nr)]
            ra2, raug2 = _ops_py.bareiss_ranks(rows_bad, nc)
            assert _ops_c.bareiss_ranks(rows_bad, nc) == (ra2, raug2)

    def test_bareiss_bigint_entries(self):
        rows = [[10**20, 2, 3], [4, 10**18, 6], [7, 8, -(10**25)]]
        assert _ops_py.bareiss_ranks(rows, 2) == _ops_c.bareiss_ranks(rows, 2)


def test_pure_fallback_integrates(monkeypatch):
    # swap the selected kernel for the pure backend and run a full check
    import gorbit._kernel as K
    from fractions import Fraction

    from gorbit.geocheck import ProbeSet, check_go_metric, p2_conditions
    from gorbit.metric import MetricSpec, ScalarBlock, s_gram, standard_metric, validate

    from conftest import space_of

    for name in ("brk", "ad_cols", "dots_cols", "bareiss_ranks"):
        monkeypatch.setattr(K, name, getattr(_ops_py, name))
    m = space_of("B", 2, (2,))
    v = check_go_metric(m, standard_metric(m), ProbeSet(random_count=25, seed=3))
    assert v.status == "PASSED_SAMPLES"
    op = validate(
        MetricSpec(
            s_block=tuple(tuple(r) for r in s_gram(m)),
            summand_params=(ScalarBlock(Fraction(1)), ScalarBlock(Fraction(2))),
        ),
        m,
    )
    assert check_go_metric(m, op, ProbeSet(random_count=25, seed=3)).status == "REFUTED"
    assert p2_conditions(m, op, m.k1_basis[0], m.n_basis[0]) == (True, True, True)


@pytest.mark.parametrize("ops", BACKENDS, ids=lambda o: o.__name__)
class TestKernelSemantics:
    def test_bracket_matches_sparse_path(self, ops, rng):
        from fractions import Fraction

        alg, (offs, tgts, cfs) = table_of("B", 2)
        for _ in range(10):
            xi = [rng.randint(-9, 9) for _ in range(alg.dim)]
            yi = [rng.randint(-9, 9) for _ in range(alg.dim)]
            x = alg.from_dense([Fraction(v) for v in xi])
            y = alg.from_dense([Fraction(v) for v in yi])
            expect = alg.bracket(x, y).dense()
            got = ops.brk(offs, tgts, cfs, alg.dim, xi, yi)
            assert [Fraction(v) for v in got] == expect

    def test_ad_cols_are_columns_of_bracket(self, ops, rng):
        alg, (offs, tgts, cfs) = table_of("A", 2)
        x = [rng.randint(-9, 9) for _ in range(alg.dim)]
        cols = ops.ad_cols(offs, tgts, cfs, alg.dim, x)
        for j in range(alg.dim):
            unit = [1 if i == j else 0 for i in range(alg.dim)]
            col = ops.brk(offs, tgts, cfs, alg.dim, x, unit)
            assert cols[j * alg.dim : (j + 1) * alg.dim] == col

    def test_rank_detects_inconsistency(self, ops):
        rows = [[1, 2, 0], [2, 4, 1]]
        ra, raug = ops.bareiss_ranks(rows, 2)
        assert (ra, raug) == (1, 2)
        rows = [[1, 2, 3], [2, 4, 6]]
        ra, raug = ops.bareiss_ranks(rows, 2)
        assert (ra, raug) == (1, 1)
