from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from starrees.scalars import (
    GF,
    QQ,
    FieldError,
    NotInvertibleError,
    field_descriptor,
    field_inverse,
    parse_field,
    rational_normalize,
)


@pytest.mark.parametrize(
    "num,den,expected",
    [(2, 4, Fraction(1, 2)), (3, -6, Fraction(-1, 2)), (0, 7, Fraction(0, 1))],
)
def test_rational_normalize(num, den, expected):
    q = rational_normalize(num, den)
    assert q == expected
    assert q.denominator > 0


def test_rational_normalize_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rational_normalize(1, 0)


def test_inverses():
    assert field_inverse(Fraction(2, 3), QQ) == Fraction(3, 2)
    assert field_inverse(2, GF(5)) == 3
    assert field_inverse(100, GF(101)) == 100


@pytest.mark.parametrize("field", [QQ, GF(7)])
def test_inverse_of_zero(field):
    with pytest.raises(NotInvertibleError):
        field_inverse(field(0), field)


def test_prime_field_rejects_composite():
    with pytest.raises(FieldError):
        GF(91)


def test_text_forms():
    assert QQ.to_str(Fraction(-3, 4)) == "-3/4"
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    F = GF(101)
    assert F.to_str(F(3)) == "3 mod 101"
    assert F.parse("3 mod 101") == 3
    assert F.coeff_str(F(-1)) == "-1"


@pytest.mark.parametrize("text,desc", [("Q", "Q"), ("QQ", "Q"), ("Fp:101", "Fp:101"), ("GF(7)", "Fp:7")])
def test_parse_field(text, desc):
    assert field_descriptor(parse_field(text)) == desc


def test_parse_field_rejects_garbage():
    with pytest.raises((FieldError, ValueError)):
        parse_field("R")


fractions = st.fractions(max_denominator=50).map(Fraction)
residues = st.integers(min_value=0, max_value=100)


@given(fractions, fractions, fractions)
def test_rational_axioms(a, b, c):
    F = QQ
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@given(residues, residues, residues)
def test_prime_field_axioms(a, b, c):
    F = GF(101)
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_normalize_idempotent(num, den):
    q = rational_normalize(num, den)
    assert rational_normalize(q.numerator, q.denominator) == q


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(1, 1000))
def test_reduction_mod_p_is_a_homomorphism(a, b, d):
    assume(d % 101 != 0)
    F = GF(101)
    q = Fraction(a, d) * Fraction(b, d) + Fraction(a, d)
    assert F.convert(q) == F.add(F.mul(F.convert(Fraction(a, d)), F.convert(Fraction(b, d))), F.convert(Fraction(a, d)))


def test_small_prime_warns():
    with pytest.warns(UserWarning, match="small"):
        GF(13)
