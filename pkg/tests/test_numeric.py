import random
from fractions import Fraction

import pytest

from seqlibs.errors import RationalArithmeticError, RationalParseError
from seqlibs.numeric import (
    common_denominator,
    parse_rational,
    rat_arith,
    render_decimal,
    render_rational,
)


@pytest.mark.parametrize("text, expected", [
    ("7", Fraction(7)),
    ("-12", Fraction(-12)),
    ("32/3", Fraction(32, 3)),
    ("-3/2", Fraction(-3, 2)),
    ("4/8", Fraction(1, 2)),
    ("0.25", Fraction(1, 4)),
    ("-1.5", Fraction(-3, 2)),
    ("  5 ", Fraction(5)),
    ("0/7", Fraction(0)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1//2", "+3", "1.", ".5", "2e3", "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(RationalParseError):
        parse_rational(text)


def test_parse_error_names_position():
    with pytest.raises(RationalParseError) as info:
        parse_rational("x", position=3)
    assert info.value.position == 3
    assert "token 3" in str(info.value)


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_render_rational_is_canonical():
    assert render_rational(Fraction(6, 3)) == "2"
    assert render_rational(Fraction(-4, 6)) == "-2/3"
    assert render_rational(Fraction(0, 5)) == "0"
    assert render_rational(parse_rational("92/5")) == "92/5"


def test_render_then_parse_is_identity():
    for value in [Fraction(0), Fraction(-7), Fraction(1, 1000), Fraction(-1162, 7)]:
        assert parse_rational(render_rational(value)) == value


def test_rat_arith():
    a, b = Fraction(1, 2), Fraction(1, 3)
    assert rat_arith(a, b, "add") == Fraction(5, 6)
    assert rat_arith(a, b, "sub") == Fraction(1, 6)
    assert rat_arith(a, b, "mul") == Fraction(1, 6)
    assert rat_arith(a, b, "div") == Fraction(3, 2)


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-50, 50), rng.randint(1, 12))


def test_rat_arith_field_axioms():
    rng = random.Random(17)
    zero, one = Fraction(0), Fraction(1)
    add = lambda x, y: rat_arith(x, y, "add")
    mul = lambda x, y: rat_arith(x, y, "mul")
    for _ in range(300):
        a, b, c = (_random_rational(rng) for _ in range(3))
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, zero) == a
        assert mul(a, one) == a
        assert add(a, rat_arith(zero, a, "sub")) == zero
        if a != 0:
            assert mul(a, rat_arith(one, a, "div")) == one


def test_random_values_render_and_parse_back():
    rng = random.Random(19)
    for _ in range(200):
        value = _random_rational(rng)
        assert parse_rational(render_rational(value)) == value
        assert common_denominator([value]) == value.denominator


def test_rat_arith_division_by_zero():
    with pytest.raises(RationalArithmeticError, match="division by zero"):
        rat_arith(Fraction(1), Fraction(0), "div")


def test_rat_arith_unknown_op():
    with pytest.raises(ValueError):
        rat_arith(Fraction(1), Fraction(1), "pow")


def test_render_decimal():
    assert render_decimal(Fraction(92, 5)) == "18.4"
    assert render_decimal(Fraction(32, 3)) == "10.667"
    assert render_decimal(Fraction(-1, 8)) == "-0.125"
    assert render_decimal(Fraction(36)) == "36"


def test_common_denominator():
    assert common_denominator([Fraction(1, 2), Fraction(1, 3), Fraction(5)]) == 6
    assert common_denominator([]) == 1
