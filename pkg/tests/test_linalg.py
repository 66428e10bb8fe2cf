from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gorbit.linalg import (
    RowSpace,
    det_bareiss,
    invert,
    leading_principal_minors,
    matvec,
    nullspace,
    orthogonalize,
    rank,
    solve,
)

fracs = st.fractions(
    min_value=-9, max_value=9, max_denominator=9
)


def test_solve_consistent_and_inconsistent():
    a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    sol, ra, raug = solve(a, [Fraction(3), Fraction(6)])
    assert sol is not None and ra == raug == 1
    sol, ra, raug = solve(a, [Fraction(3), Fraction(7)])
    assert sol is None and raug == ra + 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(fracs, min_size=3, max_size=3), min_size=3, max_size=5))
def test_solve_residual_is_zero(rows):
    rhs = [sum(row) for row in rows]  # consistent by construction: x = (1,1,1)
    sol, ra, raug = solve(rows, rhs)
    assert sol is not None and ra == raug
    for row, b in zip(rows, rhs):
        assert sum(Fraction(c) * x for c, x in zip(row, sol)) == b


def test_nullspace_dimension():
    a = [[Fraction(1), Fraction(1), Fraction(0)]]
    basis = nullspace(a)
    assert len(basis) == 2
    for v in basis:
        assert sum(c * x for c, x in zip(a[0], v)) == 0


def test_det_bareiss_matches_small_cases():
    assert det_bareiss([[3]]) == 3
    assert det_bareiss([[1, 2], [3, 4]]) == -2
    assert det_bareiss([[0, 1], [1, 0]]) == -1
    assert det_bareiss([[2, 0, 0], [0, 0, 1], [0, 1, 0]]) == -2


def test_leading_minors_on_indefinite_matrix():
    m = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert leading_principal_minors(m) == [Fraction(0), Fraction(-1)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(fracs, min_size=4, max_size=4), min_size=4, max_size=4))
def test_leading_minors_match_determinants(rows):
    minors = leading_principal_minors(rows)
    for k in range(1, 5):
        sub = [[Fraction(rows[i][j]) for j in range(k)] for i in range(k)]
        den = 1
        for r in sub:
            for x in r:
                den = den * x.denominator
        scaled = [[int(x * den) for x in r] for r in sub]
        assert minors[k - 1] == Fraction(det_bareiss(scaled), den**k)


def test_invert_roundtrip():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = invert(a)
    assert matvec(inv, matvec(a, [Fraction(5), Fraction(-3)])) == [Fraction(5), Fraction(-3)]


def test_rowspace_membership_and_growth():
    rs = RowSpace(3)
    assert rs.add([1, 2, 3])
    assert not rs.add([2, 4, 6])
    assert rs.contains([Fraction(1, 2), 1, Fraction(3, 2)])
    assert rs.add([0, 1, 1])
    assert rs.dim == 2
    assert not rs.contains([0, 0, 1])
    assert rs.add([0, 0, 1])
    assert rs.dim == 3


def test_rowspace_insertion_order_independent():
    vecs = [[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, -1, 0], [0, 0, 0, 5]]
    a = RowSpace(4)
    b = RowSpace(4)
    for v in vecs:
        a.add(v)
    for v in reversed(vecs):
        b.add(v)
    assert a.dim == b.dim == 3
    for row in a.basis():
        assert b.contains(row)


def test_orthogonalize_against_weighted_form():
    w = [Fraction(1), Fraction(2), Fraction(3)]

    def pair(u, v):
        return sum(wi * a * b for wi, a, b in zip(w, u, v))

    out = orthogonalize([[1, 1, 0], [0, 1, 1], [1, 0, 0]], pair)
    assert len(out) == 3
    for i in range(3):
        for j in range(i + 1, 3):
            assert pair(out[i], out[j]) == 0


def test_rank_of_rectangular():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 0]]) == 2
