from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sl2aut.scalar import I, ONE, ZERO, Scalar, format_scalar, parse_scalar, sqrt_exact
from helpers import nonzero_scalars, scalars


def test_multiplication_examples():
    assert Scalar(Fraction(1, 2)) * Scalar(0, 2) == I
    assert I * I == -1
    assert Scalar(Fraction(1, 3)) + Scalar(Fraction(1, 6)) == Scalar(Fraction(1, 2))


def test_inverse_examples():
    assert Scalar(2).inverse() == Scalar(Fraction(1, 2))
    assert I.inverse() == -I
    assert Scalar(1, 1).inverse() == Scalar(Fraction(1, 2), Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_sqrt_examples():
    assert sqrt_exact(4) == 2
    assert sqrt_exact(-1) == I
    assert sqrt_exact(2) is None
    assert sqrt_exact(Scalar(0, 2)) == Scalar(1, 1)
    assert sqrt_exact(Scalar(0, -2)) == Scalar(1, -1)
    assert sqrt_exact(-4) == Scalar(0, 2)
    assert sqrt_exact(Scalar(Fraction(9, 4))) == Scalar(Fraction(3, 2))


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 5


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ZERO
    if a:
        assert a * a.inverse() == ONE


@given(scalars)
def test_reduced_forms(a):
    for q in (a.re, a.im):
        assert q.denominator > 0
        assert Fraction(q.numerator, q.denominator) == q


@given(scalars)
def test_sqrt_of_squares(s):
    root = sqrt_exact(s * s)
    assert root is not None
    assert root * root == s * s
    assert root.re > 0 or (root.re == 0 and root.im >= 0)
    assert root in (s, -s)


@given(st.integers(2, 50).filter(lambda n: int(n**0.5) ** 2 != n))
def test_nonsquare_integers(n):
    assert sqrt_exact(n) is None


@given(scalars)
def test_text_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_text_forms():
    assert format_scalar(Scalar(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4*i"
    assert format_scalar(I) == "i"
    assert format_scalar(-I) == "-i"
    assert format_scalar(Scalar(3)) == "3"
    assert parse_scalar("2+i") == Scalar(2, 1)


@given(nonzero_scalars, st.integers(-4, 4))
def test_integer_powers(a, n):
    expected = ONE
    for _ in range(abs(n)):
        expected = expected * a
    if n < 0:
        expected = expected.inverse()
    assert a ** n == expected
