"""Exact rational arithmetic on top of :class:`fractions.Fraction`.

``Fraction`` already keeps values reduced with a positive denominator, so it
is used directly as the rational type.  This module adds the strict text
format, a three-way comparison and the dyadic threshold ``blb``.
"""
from __future__ import annotations

import enum
import re
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_TEXT = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def parse_rational(text: str) -> Fraction:
    """Parse ``[-]digits[/digits]``; anything else raises ``ValueError``."""
    match = _TEXT.match(text.strip().replace("−", "-"))
    if match is None:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = match.groups()
    den_value = int(den) if den is not None else 1
    if den_value == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    value = Fraction(int(num), den_value)
    return -value if sign else value


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    # Fraction.__str__ already emits "-3/2", "0", "5".
    return str(q)


def rational_arithmetic(a: Fraction, b: Fraction, op: str) -> Fraction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rational_compare(a: Fraction, b: Fraction) -> Ordering:
    """Three-way comparison by cross multiplication of the reduced forms."""
    a, b = as_rational(a), as_rational(b)
    # denominators are positive, so the sign of the difference is the sign of
    # the cross product difference
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def rational_max(a: Fraction, b: Fraction) -> Fraction:
    return b if rational_compare(a, b) is Ordering.LESS else a


def dyadic(exponent: int) -> Fraction:
    """Return ``2**-exponent`` exactly."""
    if exponent >= 0:
        return Fraction(1, 1 << exponent)
    return Fraction(1 << -exponent)


def blb(epsilon: Fraction) -> int:
    """Least natural ``b`` with ``2**-b < epsilon``."""
    epsilon = as_rational(epsilon)
    if epsilon <= 0:
        raise ValueError("blb needs a positive epsilon")
    if epsilon > 1:
        return 0
    # 2**-b < p/q  <=>  q < p * 2**b; start near the answer and walk up
    p, q = epsilon.numerator, epsilon.denominator
    b = max(q.bit_length() - p.bit_length() - 1, 0)
    while not q < (p << b):
        b += 1
    return b


def simplest_between(low: Fraction, high: Fraction) -> Fraction:
    """Rational with the smallest denominator in the open interval ``(low, high)``.

    Continued-fraction descent; requires ``0 <= low < high``.
    """
    low, high = Fraction(low), Fraction(high)
    if not 0 <= low < high:
        raise ValueError("need 0 <= low < high")
    whole = low.numerator // low.denominator
    if whole + 1 < high:
        return Fraction(whole + 1)
    # both ends share the integer part; recurse on reciprocals of the fractions
    frac_low, frac_high = low - whole, high - whole
    if frac_low == 0:
        inner = Fraction(int(1 / frac_high) + 1)
    else:
        inner = simplest_between(1 / frac_high, 1 / frac_low)
    return whole + 1 / inner
