"""Exactly rounded addition of binary floats with independent precisions.

Each value carries its own precision; `add_positive` returns the sum of two
positive values rounded to a caller-chosen target precision, together with
the ternary comparison of the rounded result against the exact sum.  The
`oracle` module computes the same answer through plain big integers and is
used for differential testing.
"""

from .core import (
    DEFAULT_CONTEXT,
    DEFAULT_EMAX,
    DEFAULT_EMIN,
    DEFAULT_MAX_PRECISION,
    Context,
    ExponentOutOfRange,
    Float,
    FloatValueError,
    InvalidPrecision,
    NotNormalized,
    get_bit,
    make_float,
    make_float_from_int,
)
from .engine import (
    AddOutcome,
    Alignment,
    ErrorClass,
    InvalidCombination,
    MainTerm,
    ScanStats,
    add_positive,
    classify_error,
    combine_rfe,
    compute_main_term,
)
from .oracle import ExactSum, exact_add, exact_add_round
from .rounding import (
    Overflow,
    RoundAction,
    RoundDecision,
    RoundingMode,
    RoundSticky,
    apply_increment,
    decide_round,
    round_to_prec,
)
from .textio import (
    FixtureCase,
    ParseError,
    SpecialValue,
    format_fixture_line,
    format_float,
    format_special,
    format_ternary,
    parse_fixture_line,
    parse_float,
    parse_mode,
    parse_ternary,
    parse_token,
)

__version__ = "0.1.0"

__all__ = [
    "AddOutcome",
    "Alignment",
    "Context",
    "DEFAULT_CONTEXT",
    "DEFAULT_EMAX",
    "DEFAULT_EMIN",
    "DEFAULT_MAX_PRECISION",
    "ErrorClass",
    "ExactSum",
    "ExponentOutOfRange",
    "FixtureCase",
    "Float",
    "FloatValueError",
    "InvalidCombination",
    "InvalidPrecision",
    "MainTerm",
    "NotNormalized",
    "Overflow",
    "ParseError",
    "RoundAction",
    "RoundDecision",
    "RoundSticky",
    "RoundingMode",
    "ScanStats",
    "SpecialValue",
    "add_positive",
    "apply_increment",
    "classify_error",
    "combine_rfe",
    "compute_main_term",
    "decide_round",
    "exact_add",
    "exact_add_round",
    "format_fixture_line",
    "format_float",
    "format_special",
    "format_ternary",
    "get_bit",
    "make_float",
    "make_float_from_int",
    "parse_fixture_line",
    "parse_float",
    "parse_mode",
    "parse_ternary",
    "parse_token",
    "round_to_prec",
]
