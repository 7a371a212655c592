"""Directed and nearest-even rounding from a (rounding bit, sticky bit) pair.

Once the exact result of an operation is reduced to a truncated p-bit
mantissa plus the bit of weight 2**-(p+1) (rounding bit r) and the logical
OR of everything below it (sticky bit s), the rounded mantissa and the
ternary value follow from a fixed table:

    (r, s) = (0, 0): exact in every mode, ternary 0
    (r, s) = (0, 1): truncate in Down/TowardZero/NearestEven, increment in Up
    (r, s) = (1, 0): halfway case; NearestEven increments iff the lowest
                     kept mantissa bit is 1
    (r, s) = (1, 1): increment in Up and NearestEven, truncate otherwise

The ternary value is the sign of (rounded - exact): -1 after a truncation
of an inexact value, +1 after an increment, 0 when exact.  TowardZero
coincides with Down because every value handled here is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .core import DEFAULT_CONTEXT, Context, Float, limb_count, limbs_from_int


class RoundingMode(Enum):
    """The four supported modes; values double as the command-line spellings."""

    DOWN = "down"
    UP = "up"
    TOWARD_ZERO = "zero"
    NEAREST_EVEN = "nearest"


class RoundAction(Enum):
    TRUNCATE = "truncate"
    INCREMENT = "increment"


class RoundSticky(NamedTuple):
    r: int
    s: int


class RoundDecision(NamedTuple):
    action: RoundAction
    ternary: int


@dataclass(frozen=True)
class Overflow:
    """The rounded result's exponent would exceed the context maximum.

    No substitute value (infinity or largest-finite) is produced; callers
    receive this record instead of a Float.  `ternary` is the ternary value
    the rounding decision produced before the range check, which keeps the
    report deterministic and reproducible by the reference path.
    """

    mode: RoundingMode
    sign: int
    ternary: int


def decide_round(mode: RoundingMode, rs: RoundSticky, last_bit: int) -> RoundDecision:
    """Apply the rounding table to a truncated positive mantissa.

    `last_bit` is the lowest kept mantissa bit (weight 2**-p), consulted only
    to break the NearestEven halfway case.
    """
    r, s = rs
    if r == 0 and s == 0:
        return RoundDecision(RoundAction.TRUNCATE, 0)
    if mode is RoundingMode.UP:
        return RoundDecision(RoundAction.INCREMENT, 1)
    if mode in (RoundingMode.DOWN, RoundingMode.TOWARD_ZERO):
        return RoundDecision(RoundAction.TRUNCATE, -1)
    # NearestEven
    if r == 0:
        return RoundDecision(RoundAction.TRUNCATE, -1)
    if s == 1:
        return RoundDecision(RoundAction.INCREMENT, 1)
    if last_bit:
        return RoundDecision(RoundAction.INCREMENT, 1)
    return RoundDecision(RoundAction.TRUNCATE, -1)


def apply_increment(
    limbs: tuple[int, ...],
    precision: int,
    exponent: int,
    limb_width: int,
    emax: int,
) -> tuple[tuple[int, ...], int, bool]:
    """Add one unit in the last place (weight 2**-p) to a p-bit mantissa.

    A carry out of the leading bit renormalizes to 0.100..0 with the exponent
    incremented; `overflowed` is set iff that pushed the exponent past emax.
    The returned exponent is reported even when out of range so the caller
    can decide how to surface the condition.
    """
    w = limb_width
    mask = (1 << w) - 1
    out = list(limbs)
    carry = 1 << (w - 1 - (precision - 1) % w)
    j = len(out) - 1
    while j >= 0 and carry:
        total = out[j] + carry
        out[j] = total & mask
        carry = total >> w
        j -= 1
    if carry:
        # 0.11..1 + ulp wrapped all the way around.
        out[0] = 1 << (w - 1)
        exponent += 1
    return tuple(out), exponent, exponent > emax


def round_to_prec(
    x: Float,
    precision: int,
    mode: RoundingMode,
    *,
    ctx: Context = DEFAULT_CONTEXT,
) -> tuple[Float, int] | Overflow:
    """Round a positive value to a (usually smaller) precision.

    Widening or equal precision pads with zeros and is always exact.
    """
    if x.sign < 0:
        raise ValueError("round_to_prec handles positive values only")
    ctx.check_precision(precision)
    w = x.limb_width
    if precision >= x.precision:
        shifted = x.mantissa_int() << (limb_count(precision, w) - len(x.limbs)) * w
        return Float(x.sign, x.exponent, precision, limbs_from_int(shifted, limb_count(precision, w) * w, w), w), 0

    full = x.mantissa_int() >> (len(x.limbs) * w - x.precision)  # exactly x.precision bits
    drop = x.precision - precision
    kept = full >> drop
    r = (full >> (drop - 1)) & 1
    s = int(bool(full & ((1 << (drop - 1)) - 1)))
    decision = decide_round(mode, RoundSticky(r, s), kept & 1)

    exponent = x.exponent
    total = limb_count(precision, w) * w
    limbs = limbs_from_int(kept << (total - precision), total, w)
    if decision.action is RoundAction.INCREMENT:
        limbs, exponent, _ = apply_increment(limbs, precision, exponent, w, ctx.emax)
    if exponent > ctx.emax:
        return Overflow(mode, x.sign, decision.ternary)
    return Float(x.sign, exponent, precision, limbs, w), decision.ternary
