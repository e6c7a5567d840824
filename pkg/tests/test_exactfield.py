from fractions import Fraction

import pytest

from src.errors import DivisionByZero, MixedFields, NoPrimitiveRoot, ParseError
from src.exactfield import (
    FieldDescriptor,
    cyclotomic_polynomial,
    euler_phi,
    field_arith,
    get_field,
    primitive_root_of_unity,
    split_roots,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) - 1 == euler_phi(12) == 4


def test_rational_arithmetic(Q):
    a = Q.element("3/4")
    b = Q.element(Fraction(1, 4))
    assert a + b == 1
    assert a * b == Fraction(3, 16)
    assert (a / b) == 3
    with pytest.raises(DivisionByZero):
        Q.inv(Q.zero)
    with pytest.raises(ParseError):
        Q.parse("1/x")


def test_prime_field_arithmetic(F7):
    assert F7.from_int(-1) == 6
    assert F7.inv(3) == 5
    assert F7.parse("10") == 3
    assert F7.pow(3, 6) == 1
    with pytest.raises(DivisionByZero):
        F7.inv(0)


def test_cyclotomic_arithmetic(Q3):
    w = Q3.generator()
    assert Q3.mul(w, w) == (Fraction(-1), Fraction(-1))
    assert Q3.format(Q3.mul(w, w)) == "-1 - w"
    assert Q3.pow(w, 3) == Q3.one
    assert Q3.inv(w) == Q3.mul(w, w)
    assert Q3.add(Q3.one, Q3.add(w, Q3.mul(w, w))) == Q3.zero


def test_cyclotomic_parse_format(Q3):
    for text in ["0", "1", "w", "-w", "1 + w", "3/2 - 2*w"]:
        assert Q3.format(Q3.parse(text)) == text
    assert Q3.parse("w^2") == Q3.parse("-1 - w")
    with pytest.raises(ParseError):
        Q3.parse("1 + v")


def test_zero_is_canonical_and_falsy(Q, F7, Q3):
    for field in (Q, F7, Q3):
        zero = field.sub(field.one, field.one)
        assert zero == field.zero
        assert not zero


def test_mixed_fields_rejected(Q, F7):
    with pytest.raises(MixedFields):
        Q.element(1) + F7.element(1)
    with pytest.raises(MixedFields):
        field_arith(Q.element(1), F7.element(1), "add")


def test_field_arith_ops(F7):
    a, b = F7.element(3), F7.element(5)
    assert field_arith(a, b, "add") == 1
    assert field_arith(a, b, "mul") == 1
    assert field_arith(a, b, "div") * b == a
    with pytest.raises(DivisionByZero):
        field_arith(a, F7.element(0), "div")


def test_primitive_roots():
    assert primitive_root_of_unity(FieldDescriptor.prime(7), 3) == 2
    assert primitive_root_of_unity(FieldDescriptor.rationals(), 2) == -1
    q3 = get_field(FieldDescriptor.cyclotomic(3))
    omega = primitive_root_of_unity(q3, 3)
    assert omega.value == q3.generator()
    with pytest.raises(NoPrimitiveRoot):
        primitive_root_of_unity(FieldDescriptor.rationals(), 3)
    with pytest.raises(NoPrimitiveRoot):
        primitive_root_of_unity(FieldDescriptor.prime(7), 4)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        FieldDescriptor.prime(6)
    assert FieldDescriptor.prime(5).characteristic == 5
    assert FieldDescriptor.cyclotomic(3).label() == "Q(zeta_3)"


def test_split_roots(Q, F7):
    roots = split_roots(Q, [Fraction(-1), Fraction(0), Fraction(1)])
    assert sorted(roots) == [Fraction(-1), Fraction(1)]
    assert split_roots(Q, [Fraction(1), Fraction(0), Fraction(1)]) is None
    # t^3 - 1 splits over F7
    assert sorted(split_roots(F7, [6, 0, 0, 1])) == [1, 2, 4]


def test_cyclotomic_fields_of_degree_one():
    q1 = get_field(FieldDescriptor.cyclotomic(1))
    q2 = get_field(FieldDescriptor.cyclotomic(2))
    assert q1.degree == q2.degree == 1
    assert q1.parse("w") == q1.one
    assert q2.generator() == (Fraction(-1),)
    assert q2.mul(q2.parse("w + 2"), q2.parse("3w")) == (Fraction(-3),)
    assert q2.format(q2.pow(q2.generator(), 3)) == "-1"
    assert primitive_root_of_unity(FieldDescriptor.cyclotomic(2), 2).value == (Fraction(-1),)


def test_sweedler_over_degree_one_cyclotomic_field():
    from app.builders import taft
    from src.hopf import validate_hopf

    hopf = taft(2, FieldDescriptor.cyclotomic(2))
    assert hopf.dim == 4
    assert validate_hopf(hopf).ok
