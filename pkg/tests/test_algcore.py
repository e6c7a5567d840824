import pytest

from src.algcore import (
    Algebra,
    algebra_generators,
    check_algebra_map,
    enveloping,
    frobenius_functional,
    gram_matrix,
    opposite,
    quotient_algebra,
    tensor_algebra,
    trace_form,
    validate_algebra,
)
from src.errors import MixedFields
from src.linalg import Matrix, is_invertible


def _nonassociative(field):
    # basis 1, a, b with a·a = b, b·a = a and every other product of a, b zero
    one, zero = field.one, field.zero
    e = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
    z = [zero, zero, zero]
    products = [
        [e[0], e[1], e[2]],
        [e[1], e[2], z],
        [e[2], e[1], z],
    ]
    return Algebra.from_products(field, ["1", "a", "b"], e[0], products, name="bad")


def test_sweedler_is_valid(h4):
    assert validate_algebra(h4.algebra).ok
    assert h4.labels == ["1", "g", "x", "gx"]


def test_sweedler_relations(h4):
    alg = h4.algebra
    one, g, x, gx = (alg.basis_element(i) for i in range(4))
    assert g * g == one
    assert x * x == alg.element([0, 0, 0, 0])
    assert x * g == -gx
    assert g * x == gx
    assert str(x - gx) == "x - gx"


def test_nonassociative_table_is_reported(Q):
    report = validate_algebra(_nonassociative(Q))
    assert not report.ok
    first = report.violations[0]
    assert first.axiom == "associativity"
    assert first.witness == [1, 1, 1]
    assert report.summary().startswith("❌")


def test_opposite_and_enveloping(h4):
    alg = h4.algebra
    assert opposite(opposite(alg)) is alg
    env = enveloping(alg)
    assert env is enveloping(alg)
    assert env.dim == 16
    assert env.unit[0] == alg.field.one
    assert not any(env.unit[1:])
    assert validate_algebra(env).ok


def test_tensor_rejects_mixed_fields(h4, f2z2):
    with pytest.raises(MixedFields):
        tensor_algebra(h4.algebra, f2z2.algebra)


def test_commutativity(h4, qz3):
    assert qz3.algebra.is_commutative()
    assert not h4.algebra.is_commutative()


def test_generators(h4, qz3):
    assert algebra_generators(h4.algebra) == [1, 2]
    assert algebra_generators(qz3.algebra) == [1]


def test_quotient_by_radical(h4):
    alg = h4.algebra
    radical = [alg.basis_vector(2), alg.basis_vector(3)]
    quotient, proj, keep = quotient_algebra(alg, radical)
    assert keep == [0, 1]
    assert quotient.dim == 2
    assert proj.shape == (2, 4)
    assert validate_algebra(quotient).ok
    assert quotient.is_commutative()


def test_frobenius_functional(h4, qz3):
    for hopf in (h4, qz3):
        f = frobenius_functional(hopf.algebra)
        assert is_invertible(gram_matrix(hopf.algebra, f))


def test_trace_form_semisimple(qz3):
    form = trace_form(qz3.algebra)
    assert form.rows[0][0] == 3
    assert form.rows[1][2] == 3
    assert form.rows[1][1] == 0
    assert is_invertible(form)


def test_identity_is_algebra_map(h4):
    alg = h4.algebra
    assert check_algebra_map(alg, alg, Matrix.identity(alg.field, 4)) == []
    assert check_algebra_map(alg, alg, Matrix.zeros(alg.field, 4, 4))[0] == (-1, -1)
