import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weylkit.exactnum import (
    ExactArithmeticError,
    ExactScalar,
    I,
    MINUS_I,
    ONE,
    SQRT2,
    ZERO,
    i_power,
    parse_scalar,
)

fractions = st.builds(
    Fraction, st.integers(-60, 60), st.integers(1, 24)
)
scalars = st.builds(ExactScalar, fractions, fractions, fractions, fractions)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())


def test_basic_examples():
    assert ONE + I == ExactScalar(Fraction(1), Fraction(1))
    assert SQRT2 * SQRT2 == ExactScalar.from_int(2)
    inv = (ONE + I).invert()
    assert inv == ExactScalar(Fraction(1, 2), Fraction(-1, 2))
    assert (ONE + I) * inv == ONE


def test_invert_zero_raises():
    with pytest.raises(ExactArithmeticError):
        ZERO.invert()


def test_to_complex_examples():
    half_i = ExactScalar(Fraction(0), Fraction(1, 2))
    assert half_i.to_complex() == 0.5j
    assert abs(SQRT2.to_complex() - math.sqrt(2.0)) <= 4 * 2e-16 * math.sqrt(2)
    x = (ONE + I) * SQRT2 * ExactScalar.rational(1, 2)
    want = complex(math.sqrt(2) / 2, math.sqrt(2) / 2)
    assert abs(x.to_complex() - want) <= 4 * 2e-16


def test_i_power_cycle():
    assert i_power(0) == ONE
    assert i_power(1) == I
    assert i_power(2) == ExactScalar.from_int(-1)
    assert i_power(3) == MINUS_I
    assert i_power(7) == MINUS_I
    assert i_power(-1) == MINUS_I


def test_powers_and_division():
    assert SQRT2**2 == ExactScalar.from_int(2)
    assert SQRT2**-2 == ExactScalar.rational(1, 2)
    assert (ONE + I) / (ONE + I) == ONE


def test_conjugate_fixes_sqrt2():
    x = ExactScalar(Fraction(1), Fraction(2), Fraction(3), Fraction(4))
    c = x.conjugate()
    assert c == ExactScalar(Fraction(1), Fraction(-2), Fraction(3), Fraction(-4))
    assert SQRT2.conjugate() == SQRT2


@given(scalars, scalars, scalars)
@settings(max_examples=150)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)


@given(nonzero_scalars)
@settings(max_examples=150)
def test_multiplicative_inverse(x):
    assert x * x.invert() == ONE


@given(scalars)
@settings(max_examples=200)
def test_render_parse_round_trip(x):
    assert parse_scalar(x.render()) == x


def test_render_canonical_forms():
    assert ZERO.render() == "0"
    assert I.render() == "i"
    assert (-I).render() == "-i"
    assert (ExactScalar.from_int(2) * I).render() == "2*i"
    assert ExactScalar.rational(-1, 2).render() == "-1/2"
    assert (ExactScalar.rational(1, 2) * SQRT2).render() == "1/2*r2"
    assert (I * SQRT2).render() == "i*r2"
    assert (ONE + I).invert().render() == "1/2 + -1/2*i"
