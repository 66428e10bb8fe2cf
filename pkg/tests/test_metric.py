import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorbit.metric import (
    MetricSpec,
    NotEquivariant,
    NotPositiveDefinite,
    OutOfSubspace,
    ScalarBlock,
    ShapeMismatch,
    SplitBlock,
    is_standard_multiple,
    s_gram,
    scaled_standard_metric,
    standard_metric,
    validate,
)

from conftest import random_n_vector, space_of


def gram_spec(m, *blocks):
    return MetricSpec(
        s_block=tuple(tuple(row) for row in s_gram(m)), summand_params=tuple(blocks)
    )


def test_standard_metric_is_identity(rng):
    m = space_of("B", 2, (2,))
    op = standard_metric(m)
    for _ in range(8):
        x = random_n_vector(m, rng)
        assert op.apply(x) == x
    assert is_standard_multiple(op.spec, m)


def test_case_a_distinct_scalars_accepted():
    m = space_of("A", 2, (1, 2))
    op = validate(
        gram_spec(m, ScalarBlock(Fraction(1)), ScalarBlock(Fraction(2)), ScalarBlock(Fraction(3))),
        m,
    )
    for i, lam in zip((1, 2, 3), (1, 2, 3)):
        for x in m.summand_elements(i):
            assert op.apply(x) == lam * x
            assert op.eigenvalue_of(x) == lam


def test_negative_scale_rejected():
    m = space_of("A", 2, (1, 2))
    with pytest.raises(NotPositiveDefinite):
        validate(
            gram_spec(m, ScalarBlock(Fraction(-1)), ScalarBlock(Fraction(1)), ScalarBlock(Fraction(1))),
            m,
        )


def test_indefinite_s_block_rejected():
    m = space_of("A", 2, (1, 2))
    sb = ((Fraction(1), Fraction(5)), (Fraction(5), Fraction(1)))
    with pytest.raises(NotPositiveDefinite):
        validate(MetricSpec(s_block=sb, summand_params=(ScalarBlock(Fraction(1)),) * 3), m)


def test_asymmetric_s_block_rejected():
    m = space_of("A", 2, (1, 2))
    sb = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))
    with pytest.raises(ShapeMismatch):
        validate(MetricSpec(s_block=sb, summand_params=(ScalarBlock(Fraction(1)),) * 3), m)


def test_wrong_block_count_rejected():
    m = space_of("A", 2, (1, 2))
    with pytest.raises(ShapeMismatch):
        validate(gram_spec(m, ScalarBlock(Fraction(1))), m)


def test_split_block_on_irreducible_rejected():
    m = space_of("A", 2, (1,))
    with pytest.raises(ShapeMismatch):
        validate(gram_spec(m, SplitBlock(Fraction(1), Fraction(2), Fraction(0))), m)


class TestSplitBlocks:
    def test_coupled_block_action(self):
        m = space_of("B", 2, (1,))
        op = validate(gram_spec(m, SplitBlock(Fraction(2), Fraction(3), Fraction(1, 2))), m)
        sp = m.split_summand(1)
        ih = m.s_basis_element(m.split_map_painted_index(1))
        for x in sp.n1_basis:
            assert op.apply(x) == Fraction(2) * x + Fraction(1, 2) * m.alg.bracket(ih, x)
        for x in sp.n2_basis:
            assert op.apply(x) == Fraction(3) * x - Fraction(1, 2) * m.alg.bracket(ih, x)

    def test_self_adjoint_and_equivariant(self, rng):
        m = space_of("A", 3, (2,))
        op = validate(gram_spec(m, SplitBlock(Fraction(1), Fraction(2), Fraction(1, 3))), m)
        alg = m.alg
        for u in m.n_basis:
            for v in m.n_basis:
                assert alg.killing_form(op.apply(u), v) == alg.killing_form(u, op.apply(v))
        for kb in m.k1_basis:
            for u in m.n_basis:
                assert m.project_n(alg.bracket(kb, op.apply(u))) == op.apply(
                    m.project_n(alg.bracket(kb, u))
                )

    def test_overly_coupled_block_fails_positivity(self):
        m = space_of("B", 2, (1,))
        with pytest.raises(NotPositiveDefinite):
            validate(gram_spec(m, SplitBlock(Fraction(1), Fraction(1), Fraction(50))), m)


def test_corrupted_operator_rejected_by_the_direct_checks():
    # the block compiler cannot produce these, but the validator's checks
    # must still catch a broken operator matrix
    from gorbit.metric import MetricOperator, check_equivariant, check_self_adjoint_positive

    m = space_of("A", 2, (1,))
    op = standard_metric(m)
    r = len(m.s_basis)
    twisted = [row[:] for row in op.matrix]
    twisted[r][r + 1] = Fraction(1)  # A -> A + B on one generator only
    bad = MetricOperator(m, op.spec, twisted)
    with pytest.raises(ShapeMismatch):
        check_self_adjoint_positive(bad)
    with pytest.raises(NotEquivariant):
        check_equivariant(bad)


def test_killing_positive_definite_across_types():
    from gorbit.linalg import leading_principal_minors
    from conftest import EXACT_SWEEP_TYPES, alg_of

    for family, rank in EXACT_SWEEP_TYPES + [("F", 4)]:
        alg = alg_of(family, rank)
        assert all(mk > 0 for mk in leading_principal_minors(alg.killing_cartan_block()))
        diag = alg.killing_diag()
        assert all(v > 0 for v in diag)


def test_apply_rejects_isotropy_components():
    m = space_of("A", 2, (1,))
    op = standard_metric(m)
    with pytest.raises(OutOfSubspace):
        op.apply(m.k1_basis[0])


def test_apply_linear_and_zero(rng):
    m = space_of("G", 2, (1,))
    op = scaled_standard_metric(m, Fraction(5, 3))
    assert op.apply(m.alg.zero()).is_zero
    x, y = random_n_vector(m, rng), random_n_vector(m, rng)
    assert op.apply(x + y) == op.apply(x) + op.apply(y)


def test_is_standard_multiple_detects_scaling():
    m = space_of("B", 2, (2,))
    assert is_standard_multiple(scaled_standard_metric(m, Fraction(7, 2)).spec, m)
    other = gram_spec(m, ScalarBlock(Fraction(1)), ScalarBlock(Fraction(2)))
    assert not is_standard_multiple(other, m)


frac_strings = st.fractions(min_value=Fraction(1, 9), max_value=9, max_denominator=9)


@settings(max_examples=30, deadline=None)
@given(lam=frac_strings, mu1=frac_strings, mu2=frac_strings, c=st.fractions(min_value=-2, max_value=2, max_denominator=6))
def test_metric_json_roundtrip_bit_exact(lam, mu1, mu2, c):
    spec = MetricSpec(
        s_block=((lam + 1,),),
        summand_params=(ScalarBlock(lam), SplitBlock(mu1, mu2, c)),
    )
    encoded = json.dumps(spec.to_json())
    assert MetricSpec.from_json(json.loads(encoded)) == spec


def test_malformed_metric_json_rejected():
    with pytest.raises(ShapeMismatch):
        MetricSpec.from_json({"s_block": [["1"]], "summands": [{"id": 1, "kind": "mystery"}]})
    with pytest.raises(ShapeMismatch):
        MetricSpec.from_json({"s_block": [["1"]]})
