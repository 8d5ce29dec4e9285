import pytest
from hypothesis import given

from rsquant.freealg import E, F, W, Element
from rsquant.parse import ParseError, format_element, parse_element, parse_scalar
from rsquant.scalars import var

from strategies import elements

r, s = var("r"), var("s")


def test_basic_expression():
    x = parse_element("e1*e2 - (r+s)*e2*e1", 2)
    assert x == Element.word((E(1), E(2))) - Element.word((E(2), E(1)), r + s)
    assert len(x) == 2


def test_torus_power_folding():
    assert parse_element("w1^-2 * e2", 2) == Element.word((W((-2, 0)), E(2)))
    assert parse_element("w1*w2^3", 2) == Element.word((W((1, 3)),))
    assert parse_element("wp2^-1", 2).words()[0][0].kind == "WP"


def test_index_out_of_range():
    with pytest.raises(ParseError, match="index out of range"):
        parse_element("e3", 2)
    with pytest.raises(ParseError, match="index out of range"):
        parse_element("w0", 2)


@pytest.mark.parametrize("text", ["e1^-1", "e1 +", "(e1", "e1 / e2", "x1", "e1 ^ r", "1/0"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_element(text, 2)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_element("e1 + $", 2)
    assert info.value.position == 5


def test_scalars_and_powers():
    assert parse_scalar("(r^2 - s^2)/(r - s)") == r + s
    assert parse_scalar("r^-1 * rp") == var("rp") / r
    assert parse_element("(e1 + f1)^2", 1) == parse_element("e1*e1 + e1*f1 + f1*e1 + f1*f1", 1)
    assert parse_element("2*e1/4", 1) == parse_element("e1", 1).scale(parse_scalar("1/2"))
    with pytest.raises(ParseError):
        parse_scalar("e1")


def test_format_examples():
    assert format_element(Element()) == "0"
    assert format_element(parse_element("3 - e1", 1)) == "3 - e1"
    assert format_element(parse_element("r*s*e1", 1)) == "r*s*e1"


@given(elements(rank=2, max_len=4))
def test_roundtrip(x):
    text = format_element(x)
    assert parse_element(text, 2) == x
    assert format_element(parse_element(text, 2)) == text
