"""Exact rational values: parsing, arithmetic and rendering.

Every number handled by seqlibs is a ``fractions.Fraction``; it is always kept
reduced with a positive denominator, so zero is uniquely ``0/1``.
"""
import math
import re
from fractions import Fraction
from typing import Iterable, Literal

from .errors import RationalArithmeticError, RationalParseError

Rational = Fraction

Op = Literal["add", "sub", "mul", "div"]

_RATIONAL_FORMAT = re.compile(r"""
    \A
    (?P<sign>-?)                 # optional minus sign
    (?P<num>\d+)                 # integer part / numerator
    (?:
        /(?P<denom>\d+)          # p/q
      |
        \.(?P<decimal>\d+)       # p.ddd
    )?
    \Z
""", re.VERBOSE)


def parse_rational(text: str, position: int | None = None) -> Rational:
    """Parse ``[-]digits``, ``[-]digits/digits`` or ``[-]digits.digits`` exactly."""
    token = text.strip()
    m = _RATIONAL_FORMAT.match(token)
    if m is None:
        raise RationalParseError("malformed rational", token, position)

    numerator = int(m.group('num'))
    denominator = 1
    if m.group('denom') is not None:
        denominator = int(m.group('denom'))
        if denominator == 0:
            raise RationalParseError("zero denominator", token, position)
    elif m.group('decimal') is not None:
        decimal = m.group('decimal')
        scale = 10 ** len(decimal)
        numerator = numerator * scale + int(decimal)
        denominator = scale

    if m.group('sign'):
        numerator = -numerator
    return Fraction(numerator, denominator)


def rat_arith(a: Rational, b: Rational, op: Op) -> Rational:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise RationalArithmeticError(f"division by zero: {render_rational(a)} / 0")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def render_rational(r: Rational) -> str:
    """Canonical form: integers bare, everything else as reduced ``p/q``."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def render_decimal(r: Rational, places: int = 3) -> str:
    """Rounded decimal for reports; never used for comparison."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    scaled = round(r * 10 ** places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10 ** places)
    digits = str(frac).rjust(places, "0").rstrip("0")
    return f"{sign}{whole}.{digits}" if digits else f"{sign}{whole}"


def common_denominator(values: Iterable[Rational]) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))
