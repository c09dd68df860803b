from fractions import Fraction

import pytest

from vogelplane.exactnum import Q, div, fmt, gen_binomial, is_integer, parse_rational


@pytest.mark.parametrize("x, y, want", [
    (0, 5, 1),
    (Fraction(1, 2), 2, Fraction(15, 8)),
    (-1, 3, 0),
    (7, 0, 1),
])
def test_gen_binomial_values(x, y, want):
    assert gen_binomial(Q(x), y) == want


def test_gen_binomial_matches_integer_binomial():
    from math import comb
    for x in range(6):
        for y in range(6):
            assert gen_binomial(Q(x), y) == comb(x + y, y)


def test_gen_binomial_rejects_bad_lower_index():
    with pytest.raises(ValueError):
        gen_binomial(Q(1), -1)
    with pytest.raises(TypeError):
        gen_binomial(Q(1), Fraction(1, 2))
    with pytest.raises(TypeError):
        gen_binomial(Q(1), True)


def test_basic_arithmetic():
    assert Q(1, 3) + Q(1, 6) == Q(1, 2)
    assert Q(2, 3) * Q(9, 4) == Q(3, 2)
    with pytest.raises(ZeroDivisionError):
        div(5, 0)
    assert div(3, 4) == Fraction(3, 4)


@pytest.mark.parametrize("text, want", [
    ("3", Fraction(3)), ("-7/21", Fraction(-1, 3)), (" 10/3 ", Fraction(10, 3)), ("−2", Fraction(-2)),
])
def test_parse_rational(text, want):
    assert parse_rational(text) == want


@pytest.mark.parametrize("text", ["1.5", "1e3", "abc", "1/", ""])
def test_parse_rational_refuses_inexact(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_rational_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


def test_fmt_roundtrip():
    for q in (Fraction(0), Fraction(-5), Fraction(22, 7), Fraction(-1, 3)):
        assert parse_rational(fmt(q)) == q
    assert fmt(Fraction(6, 3)) == "2"
    assert fmt(Fraction(-1, 3)) == "-1/3"


def test_is_integer():
    assert is_integer(4) and is_integer(Fraction(8, 2))
    assert not is_integer(Fraction(1, 2))
