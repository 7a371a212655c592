"""Reference addition path: exact integer sum, then one rounding step.

This module exists to check the limb engine by a second, structurally
unrelated route: both operands are expanded into a single unbounded integer
each, added exactly, and the sum is rounded by extracting the rounding bit
and a full OR over every lower bit.  Nothing here shares code with the
engine except the rounding decision table itself, which both paths must
apply identically by design.  Clarity wins over speed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DEFAULT_CONTEXT, Context, Float, limb_count, limbs_from_int
from .engine import AddOutcome, ScanStats
from .rounding import Overflow, RoundAction, RoundingMode, RoundSticky, decide_round


@dataclass(frozen=True)
class ExactSum:
    """A positive value magnitude * 2**exponent2 with an odd magnitude.

    Keeping the magnitude odd makes the representation canonical, so two
    equal sums always compare equal field by field.
    """

    magnitude: int
    exponent2: int

    def bit_length(self) -> int:
        return self.magnitude.bit_length()

    @property
    def exponent(self) -> int:
        """Normalized-form exponent e with value = 0.1... * 2**e."""
        return self.exponent2 + self.magnitude.bit_length()


def exact_add(x: Float, y: Float) -> ExactSum:
    """The exact sum of two positive values as one canonical integer."""
    if x.sign < 0 or y.sign < 0:
        raise ValueError("exact_add handles positive operands only")
    mx = x.mantissa_int()
    my = y.mantissa_int()
    ex = x.exponent - len(x.limbs) * x.limb_width
    ey = y.exponent - len(y.limbs) * y.limb_width
    low = min(ex, ey)
    total = (mx << (ex - low)) + (my << (ey - low))
    strip = (total & -total).bit_length() - 1
    return ExactSum(total >> strip, low + strip)


def exact_add_round(
    x: Float,
    y: Float,
    precision: int,
    mode: RoundingMode,
    *,
    ctx: Context = DEFAULT_CONTEXT,
) -> AddOutcome | Overflow:
    """Round x + y through the exact integer sum; bit-identical contract to
    the engine's add_positive, including the ternary value and the overflow
    report.  The outcome's scan statistics are zero: this path reads all
    input unconditionally and never scans."""
    if x.limb_width != y.limb_width:
        raise ValueError("operands must share a limb width")
    ctx.check_precision(precision)
    total = exact_add(x, y)
    magnitude = total.magnitude
    bits = magnitude.bit_length()
    exponent = total.exponent

    if bits <= precision:
        mantissa = magnitude << (precision - bits)
        rs = RoundSticky(0, 0)
    else:
        drop = bits - precision
        mantissa = magnitude >> drop
        r = (magnitude >> (drop - 1)) & 1
        s = int(bool(magnitude & ((1 << (drop - 1)) - 1)))
        rs = RoundSticky(r, s)

    decision = decide_round(mode, rs, mantissa & 1)
    if decision.action is RoundAction.INCREMENT:
        mantissa += 1
        if mantissa >> precision:
            mantissa >>= 1
            exponent += 1
    if exponent > ctx.emax:
        return Overflow(mode, 1, decision.ternary)

    w = x.limb_width
    width = limb_count(precision, w) * w
    result = Float(
        1,
        exponent,
        precision,
        limbs_from_int(mantissa << (width - precision), width, w),
        w,
    )
    return AddOutcome(result, decision.ternary, ScanStats())
