"""Text grammar: parsing, formatting, fixture lines."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xadd import (
    ExponentOutOfRange,
    FixtureCase,
    NotNormalized,
    Overflow,
    ParseError,
    RoundingMode,
    SpecialValue,
    format_fixture_line,
    format_float,
    format_special,
    format_ternary,
    make_float,
    parse_fixture_line,
    parse_float,
    parse_mode,
    parse_ternary,
    parse_token,
)
from xadd.core import DEFAULT_CONTEXT


def test_parse_with_exponent():
    x = parse_float("0.101e3")
    assert (x.sign, x.exponent, x.precision, x.mantissa_bits()) == (1, 3, 3, "101")


def test_parse_default_exponent():
    x = parse_float("0.10")
    assert (x.exponent, x.precision, x.mantissa_bits()) == (0, 2, "10")


def test_parse_rejects_unnormalized():
    with pytest.raises(NotNormalized):
        parse_float("0.011e1")


def test_parse_rejects_single_bit():
    from xadd import InvalidPrecision

    with pytest.raises(InvalidPrecision):
        parse_float("0.1")


def test_parse_rejects_out_of_range_exponent():
    with pytest.raises(ExponentOutOfRange):
        parse_float(f"0.10e{DEFAULT_CONTEXT.emax + 1}")


@pytest.mark.parametrize(
    "bad",
    ["", "0.", "1.01", "0.102", "0.10e", "0.10e1.5", "0.10 e1", ".10", "0.10f2", "0,10"],
)
def test_parse_rejects_bad_syntax(bad):
    with pytest.raises(ParseError):
        parse_float(bad)


def test_format_examples():
    assert format_float(make_float(1, 0, 4, "1011")) == "0.1011e0"
    assert format_float(make_float(1, -9, 2, "10")) == "0.10e-9"
    assert format_float(make_float(1, 30, 5, "10001")) == "0.10001e30"


def test_format_rejects_negative():
    with pytest.raises(ValueError):
        format_float(make_float(-1, 0, 2, "10"))


@given(
    p=st.integers(2, 90),
    e=st.integers(-200, 200),
    data=st.data(),
)
def test_round_trip_parse_format(p, e, data):
    mant = data.draw(st.integers(1 << (p - 1), (1 << p) - 1))
    x = make_float(1, e, p, format(mant, f"0{p}b"))
    assert parse_float(format_float(x)) == x


@pytest.mark.parametrize(
    "token,kind,sign",
    [
        ("nan", "nan", 1),
        ("inf(+)", "inf", 1),
        ("inf(-)", "inf", -1),
        ("zero(+)", "zero", 1),
        ("zero(-)", "zero", -1),
        ("overflow(+)", "overflow", 1),
        ("overflow(-)", "overflow", -1),
    ],
)
def test_special_tokens_round_trip(token, kind, sign):
    value = parse_token(token)
    assert value == SpecialValue(kind, sign)
    assert format_special(value) == token


def test_special_tokens_need_their_sign_rules():
    with pytest.raises(ParseError):
        parse_token("inf")
    with pytest.raises(ParseError):
        parse_token("nan(+)")


def test_parse_token_falls_back_to_float():
    assert parse_token("0.110e-2") == make_float(1, -2, 3, "110")


def test_ternary_tokens():
    assert [format_ternary(t) for t in (-1, 0, 1)] == ["-1", "0", "+1"]
    assert [parse_ternary(s) for s in ("-1", "0", "+1")] == [-1, 0, 1]
    with pytest.raises(ParseError):
        parse_ternary("1")
    with pytest.raises(ValueError):
        format_ternary(2)


def test_parse_mode_names():
    assert parse_mode("down") is RoundingMode.DOWN
    assert parse_mode("up") is RoundingMode.UP
    assert parse_mode("zero") is RoundingMode.TOWARD_ZERO
    assert parse_mode("nearest") is RoundingMode.NEAREST_EVEN
    with pytest.raises(ParseError):
        parse_mode("floor")


def test_fixture_line_round_trip():
    x = make_float(1, 0, 12, "101111100101")
    y = make_float(1, -7, 5, "11010")
    result = make_float(1, 0, 2, "11")
    line = format_fixture_line(x, y, 2, RoundingMode.NEAREST_EVEN, result, 1)
    assert line == "0.101111100101e0 0.11010e-7 2 nearest -> 0.11e0 +1"
    case = parse_fixture_line(line)
    assert case == FixtureCase(x, y, 2, RoundingMode.NEAREST_EVEN, result, 1)


def test_fixture_line_overflow_result():
    x = make_float(1, 0, 2, "11")
    line = format_fixture_line(x, x, 2, RoundingMode.UP, Overflow(RoundingMode.UP, 1, 1))
    assert line.endswith("-> overflow(+) +1")
    case = parse_fixture_line(line)
    assert case.expected == SpecialValue("overflow", 1)
    assert case.ternary == 1


def test_fixture_comments_and_blanks_skipped():
    assert parse_fixture_line("") is None
    assert parse_fixture_line("   # just a comment") is None
    case = parse_fixture_line("0.10 0.10 2 down -> 0.10e1 0  # trailing note")
    assert case is not None and case.precision == 2


@pytest.mark.parametrize(
    "line",
    [
        "0.10 0.10 2 down 0.10e1 0",  # missing arrow
        "0.10 0.10 x down -> 0.10e1 0",  # bad precision
        "0.10 0.10 2 floor -> 0.10e1 0",  # bad mode
        "0.10 0.10 2 down -> 0.10e1",  # missing ternary
        "0.10 0.10 2 down -> nan 0",  # nan is not a result
        "0.10 0.01 2 down -> 0.10e1 0",  # unnormalized operand
    ],
)
def test_fixture_line_rejects_malformed(line):
    with pytest.raises(ParseError):
        parse_fixture_line(line)


def test_finite_fixture_result_needs_ternary():
    x = make_float(1, 0, 2, "10")
    with pytest.raises(ValueError):
        format_fixture_line(x, x, 2, RoundingMode.DOWN, x)
