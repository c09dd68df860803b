"""Exact rational helpers.

All scalars in the package are :class:`fractions.Fraction` instances, which are
kept reduced with a positive denominator.  This module adds the few things the
standard type lacks: strict parsing from ``"p/q"`` strings (floats are
rejected), the ``"p/q"`` serialization used by every emitter, and the
generalized binomial coefficient in which the universal formulas are written.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

BigRational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def Q(value, denominator=None) -> Fraction:
    """Coerce ``value`` to a Fraction without ever going through a float.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    """
    if denominator is not None:
        return Fraction(Q(value), Q(denominator))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimal points and exponents are refused."""
    m = _RATIONAL_RE.match(text.replace("−", "-"))
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def fmt(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def div(a, b) -> Fraction:
    """Exact quotient; a zero divisor raises ZeroDivisionError with the operands."""
    a, b = Q(a), Q(b)
    if b == 0:
        raise ZeroDivisionError(f"division of {fmt(a)} by zero")
    return a / b


def gen_binomial(x, y: int):
    """Return ``(1+x)(2+x)...(y+x) / y!``, i.e. binom(y+x, y) for rational x.

    ``y`` must be a nonnegative integer; ``y == 0`` gives 1.  ``x`` may be any
    field element supporting ``+`` and ``/`` (Fractions, or sympy expressions
    when a formula is restricted to a line).
    """
    if isinstance(y, bool) or not isinstance(y, int):
        raise TypeError("lower index must be an int")
    if y < 0:
        raise ValueError("lower index must be nonnegative")
    prod = Fraction(1)
    for j in range(1, y + 1):
        prod = prod * (j + x)
    return prod / math.factorial(y)


def is_integer(q) -> bool:
    return Q(q).denominator == 1
