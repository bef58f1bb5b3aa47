from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planar_holant.algebra import (
    AN,
    AlgebraicNumber,
    DivisionByZero,
    I,
    ONE,
    ParseError,
    SQRT2,
    ZERO,
    ZETA,
    format_scalar,
    parse_scalar,
    sqrt_in_field,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(AlgebraicNumber, rationals, rationals, rationals, rationals)


def test_defining_relations():
    assert ZETA * ZETA == I
    assert (ONE + I) * (ONE - I) == AN(2)
    assert ZETA.inv() == -(ZETA ** 3)
    assert ZETA ** 4 == AN(-1)
    assert SQRT2 == ZETA - ZETA ** 3
    assert SQRT2 * SQRT2 == AN(2)


def test_primitive_eighth_root():
    for k in range(1, 8):
        assert ZETA ** k != ONE
    assert ZETA ** 8 == ONE


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(scalars)
def test_inverse_and_conjugation(a):
    if not a.is_zero():
        assert a * a.inv() == ONE
    assert a.conj().conj() == a
    n = a.norm_sq()
    # norm_sq lands in Q(sqrt 2): no i component, conjugation-fixed
    assert n.c[2] == 0 and n.c[1] == -n.c[3]
    assert n.is_zero() == a.is_zero()


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ZERO.inv()
    with pytest.raises(DivisionByZero):
        ONE / ZERO


def test_unit_root_flags():
    assert ZETA.is_odd_alpha_power() and ZETA.is_eighth_root()
    assert not ZETA.is_fourth_root()
    assert AN(2).is_fourth_root() is False
    assert AN(2).is_eighth_root() is False
    assert (-I).is_fourth_root()
    assert I.square_is_pm_one()
    assert ZETA.square_is_pm_i()
    assert AN(1).square_is_pm_one()
    assert ZERO.is_fourth_root() is False


def test_parse_examples():
    assert parse_scalar("1/2 + 3*w^2") == AlgebraicNumber(Fraction(1, 2), 0, 3, 0)
    assert parse_scalar("i") == AlgebraicNumber(0, 0, 1, 0)
    assert parse_scalar("w^4") == AlgebraicNumber(-1, 0, 0, 0)
    assert parse_scalar("w") == ZETA
    assert parse_scalar("-2*w^3 + 1") == AlgebraicNumber(1, 0, 0, -2)
    assert parse_scalar(" 7 / 3 ") == AlgebraicNumber(Fraction(7, 3))


def test_parse_errors_have_positions():
    for bad in ["", "1 +", "w^", "3*q", "1//2", "i i"]:
        with pytest.raises(ParseError) as e:
            parse_scalar(bad)
        assert e.value.position >= 0


@given(scalars)
def test_parse_format_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@given(scalars)
def test_sqrt_of_squares(a):
    r = sqrt_in_field(a * a)
    assert r is not None
    assert r * r == a * a


def test_sqrt_absent_outside_field():
    assert sqrt_in_field(AN(3)) is None
    assert sqrt_in_field(AN(-2)) is not None  # i*sqrt2 is in the field
    assert sqrt_in_field(I) == ZETA or sqrt_in_field(I) == -ZETA
    assert sqrt_in_field(SQRT2) is None
    assert sqrt_in_field(AN(2)) == SQRT2 or sqrt_in_field(AN(2)) == -SQRT2
