"""Rounding decisions, mantissa increment, single-value precision change."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xadd import (
    DEFAULT_CONTEXT,
    Context,
    Overflow,
    RoundAction,
    RoundDecision,
    RoundingMode,
    RoundSticky,
    apply_increment,
    decide_round,
    make_float,
    round_to_prec,
)

from .helpers import frac_round

D, U, Z, N = (
    RoundingMode.DOWN,
    RoundingMode.UP,
    RoundingMode.TOWARD_ZERO,
    RoundingMode.NEAREST_EVEN,
)
TRUNC, INC = RoundAction.TRUNCATE, RoundAction.INCREMENT

# All 32 cells: mode, r, s, last kept bit -> action, ternary.  Directed
# modes ignore the last bit; nearest consults it only on the r=1, s=0 tie.
DECISION_TABLE = [
    (D, 0, 0, 0, TRUNC, 0),
    (D, 0, 0, 1, TRUNC, 0),
    (D, 0, 1, 0, TRUNC, -1),
    (D, 0, 1, 1, TRUNC, -1),
    (D, 1, 0, 0, TRUNC, -1),
    (D, 1, 0, 1, TRUNC, -1),
    (D, 1, 1, 0, TRUNC, -1),
    (D, 1, 1, 1, TRUNC, -1),
    (U, 0, 0, 0, TRUNC, 0),
    (U, 0, 0, 1, TRUNC, 0),
    (U, 0, 1, 0, INC, 1),
    (U, 0, 1, 1, INC, 1),
    (U, 1, 0, 0, INC, 1),
    (U, 1, 0, 1, INC, 1),
    (U, 1, 1, 0, INC, 1),
    (U, 1, 1, 1, INC, 1),
    (Z, 0, 0, 0, TRUNC, 0),
    (Z, 0, 0, 1, TRUNC, 0),
    (Z, 0, 1, 0, TRUNC, -1),
    (Z, 0, 1, 1, TRUNC, -1),
    (Z, 1, 0, 0, TRUNC, -1),
    (Z, 1, 0, 1, TRUNC, -1),
    (Z, 1, 1, 0, TRUNC, -1),
    (Z, 1, 1, 1, TRUNC, -1),
    (N, 0, 0, 0, TRUNC, 0),
    (N, 0, 0, 1, TRUNC, 0),
    (N, 0, 1, 0, TRUNC, -1),
    (N, 0, 1, 1, TRUNC, -1),
    (N, 1, 0, 0, TRUNC, -1),  # tie, even mantissa stays
    (N, 1, 0, 1, INC, 1),  # tie, odd mantissa rounds up
    (N, 1, 1, 0, INC, 1),
    (N, 1, 1, 1, INC, 1),
]


@pytest.mark.parametrize("mode,r,s,last_bit,action,ternary", DECISION_TABLE)
def test_decide_round_table(mode, r, s, last_bit, action, ternary):
    assert decide_round(mode, RoundSticky(r, s), last_bit) == RoundDecision(action, ternary)


def test_decide_round_exact_iff_both_bits_clear():
    for mode, r, s, last_bit, _, ternary in DECISION_TABLE:
        assert (ternary == 0) == (r == 0 and s == 0)


def bits_of(limbs, precision, width=64):
    acc = 0
    for limb in limbs:
        acc = (acc << width) | limb
    return format(acc, f"0{len(limbs) * width}b")[:precision]


def test_apply_increment_simple():
    x = make_float(1, 0, 4, "1010")
    limbs, exponent, overflowed = apply_increment(x.limbs, 4, 0, 64, DEFAULT_CONTEXT.emax)
    assert bits_of(limbs, 4) == "1011" and exponent == 0 and not overflowed


def test_apply_increment_full_carry_renormalizes():
    x = make_float(1, 0, 4, "1111")
    limbs, exponent, overflowed = apply_increment(x.limbs, 4, 0, 64, DEFAULT_CONTEXT.emax)
    assert bits_of(limbs, 4) == "1000" and exponent == 1 and not overflowed


def test_apply_increment_overflow_at_emax():
    emax = DEFAULT_CONTEXT.emax
    x = make_float(1, emax, 2, "11")
    limbs, exponent, overflowed = apply_increment(x.limbs, 2, emax, 64, emax)
    assert bits_of(limbs, 2) == "10" and exponent == emax + 1 and overflowed


def test_apply_increment_carry_crosses_limb_boundary():
    ctx32 = Context(limb_width=32)
    x = make_float(1, 0, 33, "1" + "0" * 31 + "1", ctx=ctx32)
    limbs, exponent, _ = apply_increment(x.limbs, 33, 0, 32, ctx32.emax)
    assert bits_of(limbs, 33, 32) == "1" + "0" * 30 + "10"
    assert exponent == 0

    y = make_float(1, 0, 33, "1" * 33, ctx=ctx32)
    limbs, exponent, _ = apply_increment(y.limbs, 33, 0, 32, ctx32.emax)
    assert bits_of(limbs, 33, 32) == "1" + "0" * 32
    assert exponent == 1


def test_round_to_prec_identity_at_same_precision():
    x = make_float(1, 0, 3, "101")
    for mode in RoundingMode:
        assert round_to_prec(x, 3, mode) == (x, 0)


def test_round_to_prec_widening_pads_zeros():
    x = make_float(1, 2, 3, "101")
    rounded, ternary = round_to_prec(x, 7, RoundingMode.DOWN)
    assert rounded.mantissa_bits() == "1010000"
    assert rounded.exponent == 2 and ternary == 0
    assert rounded.as_fraction() == x.as_fraction()


def test_round_to_prec_truncates_down():
    x = make_float(1, 0, 4, "1011")
    assert round_to_prec(x, 2, RoundingMode.DOWN) == (make_float(1, 0, 2, "10"), -1)


def test_round_to_prec_nearest_increments():
    x = make_float(1, 0, 4, "1011")
    assert round_to_prec(x, 2, RoundingMode.NEAREST_EVEN) == (make_float(1, 0, 2, "11"), 1)


def test_round_to_prec_carry_bumps_exponent():
    x = make_float(1, 0, 4, "1111")
    assert round_to_prec(x, 2, RoundingMode.UP) == (make_float(1, 1, 2, "10"), 1)


def test_round_to_prec_overflow():
    emax = DEFAULT_CONTEXT.emax
    x = make_float(1, emax, 4, "1111")
    assert round_to_prec(x, 2, RoundingMode.UP) == Overflow(RoundingMode.UP, 1, 1)
    assert round_to_prec(x, 2, RoundingMode.DOWN) == (make_float(1, emax, 2, "11"), -1)


def test_round_to_prec_rejects_negative():
    x = make_float(-1, 0, 2, "10")
    with pytest.raises(ValueError):
        round_to_prec(x, 2, RoundingMode.DOWN)


@given(
    p_in=st.integers(2, 90),
    p_out=st.integers(2, 90),
    mode=st.sampled_from(list(RoundingMode)),
    exponent=st.integers(-50, 50),
    data=st.data(),
)
def test_round_to_prec_matches_rational_reference(p_in, p_out, mode, exponent, data):
    mant = data.draw(st.integers(1 << (p_in - 1), (1 << p_in) - 1))
    bits = format(mant, f"0{p_in}b")
    x = make_float(1, exponent, p_in, bits)
    got = round_to_prec(x, p_out, mode)
    assert not isinstance(got, Overflow)
    rounded, ternary = got
    want_mant, want_e, want_ternary = frac_round(x.as_fraction(), p_out, mode)
    assert int(rounded.mantissa_bits(), 2) == want_mant
    assert rounded.exponent == want_e
    assert ternary == want_ternary


@given(
    p_out=st.integers(2, 40),
    exponent=st.integers(-20, 20),
    data=st.data(),
)
def test_round_to_prec_directed_sandwich(p_out, exponent, data):
    p_in = data.draw(st.integers(2, 80))
    mant = data.draw(st.integers(1 << (p_in - 1), (1 << p_in) - 1))
    x = make_float(1, exponent, p_in, format(mant, f"0{p_in}b"))
    down, _ = round_to_prec(x, p_out, RoundingMode.DOWN)
    up, _ = round_to_prec(x, p_out, RoundingMode.UP)
    assert down.as_fraction() <= x.as_fraction() <= up.as_fraction()
    # The nearest result is within half an ulp of the pre-carry exponent.
    near, _ = round_to_prec(x, p_out, RoundingMode.NEAREST_EVEN)
    assert abs(near.as_fraction() - x.as_fraction()) <= Fraction(2) ** (x.exponent - p_out - 1)
    # Toward-zero coincides with down on positive values.
    assert round_to_prec(x, p_out, RoundingMode.TOWARD_ZERO) == (
        down,
        round_to_prec(x, p_out, RoundingMode.DOWN)[1],
    )
