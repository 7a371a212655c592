"""Text form of values, results and test-fixture lines.

Grammar for a finite value:

    float := "0." bit+ ("e" int)?

The bit count sets the precision (so trailing zeros are significant), the
first bit must be 1, and a missing exponent means 0.  The canonical output
form always spells the exponent: ``0.1011e0``.

Special values are written as tagged tokens: ``nan``, ``inf(+)``,
``inf(-)``, ``zero(+)``, ``zero(-)``, and ``overflow(+)`` / ``overflow(-)``
for a reported overflow.  They exist only at this layer; the arithmetic
core works on finite positive values and rejects them.

A fixture line records one addition:

    x y p mode -> result ternary

with ``#`` starting a comment and blank lines ignored, e.g.

    0.101111100101 0.11010e-7 2 nearest -> 0.11e0 +1
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import DEFAULT_CONTEXT, Context, Float, FloatValueError, make_float
from .rounding import Overflow, RoundingMode


class ParseError(ValueError):
    """Input does not match the value grammar or the fixture line format."""


_FLOAT_RE = re.compile(r"0\.(?P<bits>[01]+)(?:e(?P<exp>[+-]?\d+))?\Z")
_SPECIAL_RE = re.compile(r"(?P<kind>nan|inf|zero|overflow)(?:\((?P<sign>[+-])\))?\Z")
_TERNARY = {"-1": -1, "0": 0, "+1": 1}


@dataclass(frozen=True)
class SpecialValue:
    """A tagged non-finite token; `sign` is +1 or -1 (nan carries +1)."""

    kind: str  # "nan" | "inf" | "zero" | "overflow"
    sign: int


def parse_float(token: str, *, ctx: Context = DEFAULT_CONTEXT) -> Float:
    """Parse a finite positive value; raises ParseError on bad syntax and
    the construction errors (NotNormalized and friends) on bad content."""
    match = _FLOAT_RE.match(token)
    if match is None:
        raise ParseError(f"not a binary float token: {token!r}")
    bits = match.group("bits")
    exponent = int(match.group("exp") or 0)
    return make_float(1, exponent, len(bits), bits, ctx=ctx)


def parse_token(token: str, *, ctx: Context = DEFAULT_CONTEXT) -> Float | SpecialValue:
    """Parse either a finite value or one of the special tagged tokens."""
    special = _SPECIAL_RE.match(token)
    if special is not None:
        kind = special.group("kind")
        sign = special.group("sign")
        if kind == "nan" and sign is not None:
            raise ParseError("nan does not take a sign tag")
        if kind != "nan" and sign is None:
            raise ParseError(f"{kind} needs a sign tag, e.g. {kind}(+)")
        return SpecialValue(kind, -1 if sign == "-" else 1)
    return parse_float(token, ctx=ctx)


def format_float(x: Float) -> str:
    if x.sign < 0:
        raise ValueError("only positive finite values have a text form")
    return f"0.{x.mantissa_bits()}e{x.exponent}"


def format_special(value: SpecialValue) -> str:
    if value.kind == "nan":
        return "nan"
    return f"{value.kind}({'+' if value.sign > 0 else '-'})"


def format_ternary(ternary: int) -> str:
    if ternary not in (-1, 0, 1):
        raise ValueError(f"ternary must be -1, 0 or +1, got {ternary!r}")
    return {-1: "-1", 0: "0", 1: "+1"}[ternary]


def parse_ternary(token: str) -> int:
    try:
        return _TERNARY[token]
    except KeyError:
        raise ParseError(f"not a ternary token: {token!r}") from None


def parse_mode(token: str) -> RoundingMode:
    try:
        return RoundingMode(token)
    except ValueError:
        raise ParseError(f"not a rounding mode: {token!r}") from None


@dataclass(frozen=True)
class FixtureCase:
    """One recorded addition; `expected` is a Float or an overflow token."""

    x: Float
    y: Float
    precision: int
    mode: RoundingMode
    expected: Float | SpecialValue
    ternary: int


def parse_fixture_line(line: str, *, ctx: Context = DEFAULT_CONTEXT) -> FixtureCase | None:
    """Parse one fixture line; returns None for blanks and comments."""
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    fields = text.split()
    if len(fields) != 7 or fields[4] != "->":
        raise ParseError(
            "fixture line must read 'x y p mode -> result ternary', got: " + text
        )
    try:
        precision = int(fields[2])
    except ValueError:
        raise ParseError(f"not a precision: {fields[2]!r}") from None
    try:
        x = parse_float(fields[0], ctx=ctx)
        y = parse_float(fields[1], ctx=ctx)
        expected = parse_token(fields[5], ctx=ctx)
    except FloatValueError as err:
        raise ParseError(str(err)) from None
    if isinstance(expected, SpecialValue) and expected.kind != "overflow":
        raise ParseError(f"recorded result must be a value or overflow: {fields[5]!r}")
    return FixtureCase(
        x, y, precision, parse_mode(fields[3]), expected, parse_ternary(fields[6])
    )


def format_fixture_line(
    x: Float,
    y: Float,
    precision: int,
    mode: RoundingMode,
    result: Float | Overflow,
    ternary: int | None = None,
) -> str:
    """Render one addition as a fixture line; an Overflow supplies its own
    ternary unless one is given explicitly."""
    if isinstance(result, Overflow):
        token = format_special(SpecialValue("overflow", result.sign))
        if ternary is None:
            ternary = result.ternary
    else:
        token = format_float(result)
        if ternary is None:
            raise ValueError("a finite result needs an explicit ternary")
    return (
        f"{format_float(x)} {format_float(y)} {precision} {mode.value}"
        f" -> {token} {format_ternary(ternary)}"
    )
