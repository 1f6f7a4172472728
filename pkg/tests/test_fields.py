import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expmaps.errors import DivisionByZero, InvalidArgs, MixedField
from expmaps.fields import FieldSpec, binom_residue, field_ops

Q = FieldSpec(0)
F5 = FieldSpec(5)


def test_characteristic_must_be_prime():
    FieldSpec(0)
    FieldSpec(2)
    FieldSpec(97)
    with pytest.raises(InvalidArgs):
        FieldSpec(4)
    with pytest.raises(InvalidArgs):
        FieldSpec(1)


def test_rational_addition():
    a = Q.coeff(Fraction(1, 2))
    b = Q.coeff(Fraction(1, 3))
    assert field_ops(a, b, "add") == Q.coeff(Fraction(5, 6))


def test_division_in_f5():
    # 4 * 3 = 12 = 2 mod 5, so 2/4 = 3
    assert field_ops(F5.coeff(2), F5.coeff(4), "div") == F5.coeff(3)


def test_zero_absorbs():
    for field in (Q, F5):
        for v in (0, 1, 3):
            assert not field_ops(field.coeff(v), field.zero, "mul")


def test_mixed_field_rejected():
    with pytest.raises(MixedField):
        field_ops(Q.one, F5.one, "add")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_ops(Q.one, Q.zero, "div")


def test_binom_residue_char0_exact():
    assert binom_residue(6, 2, Q) == Q.coeff(15)


def test_binom_residue_examples():
    # C(6,2) = 15, odd
    assert binom_residue(6, 2, FieldSpec(2)) == FieldSpec(2).one
    # C(18,9) = 48620 = 2 mod 3
    assert binom_residue(18, 9, FieldSpec(3)) == FieldSpec(3).coeff(2)
    for p in (2, 3, 5):
        for j in (0, 1, 2):
            field = FieldSpec(p)
            assert binom_residue(p ** j, p ** j, field) == field.one


def test_binom_residue_rejects_k_above_n():
    with pytest.raises(InvalidArgs):
        binom_residue(2, 3, Q)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_identity_small_primes(p):
    # For i = p^j * q with gcd(q, p) = 1: C(i, p^j) = q mod p.
    field = FieldSpec(p)
    for i in range(1, 257):
        j = 0
        q = i
        while q % p == 0:
            q //= p
            j += 1
        expected = field.coeff(q)
        assert binom_residue(i, p ** j, field) == expected
        assert field.coeff(math.comb(i, p ** j)) == expected


@st.composite
def coeffs(draw, field):
    p = field.characteristic
    if p:
        return field.coeff(draw(st.integers(0, p - 1)))
    return field.coeff(
        Fraction(draw(st.integers(-30, 30)), draw(st.integers(1, 12)))
    )


@settings(max_examples=60, deadline=None)
@given(data=st.data())
@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_field_axioms(p, data):
    field = FieldSpec(p)
    a = data.draw(coeffs(field))
    b = data.draw(coeffs(field))
    c = data.draw(coeffs(field))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == field.zero
    if b:
        assert (a / b) * b == a
