"""Exactly rounded addition of two positive floats with independent precisions.

The sum of x (larger exponent) and y is split into a main term and an error
term.  The main term is the exact sum of the first p+2 bits of x and the
overlapping bits of y: p mantissa bits, a temporary rounding bit rb of
weight 2**-(p+1) and a following bit fb of weight 2**-(p+2), all relative
to the result exponent.  The error term eps collects every remaining input
bit and satisfies 0 <= eps < 2u where u is fb's weight.

The final (rounding, sticky) pair then depends only on rb, fb and how eps
compares with 0 and u, and that comparison is decided by scanning trailing
bits from the most significant end, stopping at the first position that
settles it.  The scan works on whole limbs: y's bits are realigned to x's
limb grid on the fly, and a block of positions is dismissed with one or two
word operations.  Statistics about how much was read are reported with the
outcome so callers can audit the short-circuit behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .core import DEFAULT_CONTEXT, Context, Float
from .rounding import (
    Overflow,
    RoundAction,
    RoundingMode,
    RoundSticky,
    apply_increment,
    decide_round,
)


class InvalidCombination(Exception):
    """An (rb, fb, error class) triple that no input can produce; engine bug."""


class ErrorClass(Enum):
    """Resolved relation of the error term to 0 and to the following bit's weight u.

    With fb = 0 only the comparison against 0 matters and GT_ZERO_LT_U means
    "nonzero" (the term may reach past u).  With fb = 1 only the comparison
    against u matters and GT_ZERO_LT_U means "below u" (possibly zero).
    """

    EQ_ZERO = "eq0"
    GT_ZERO_LT_U = "gt0"
    EQ_U = "eq_u"
    GT_U = "gt_u"


@dataclass(frozen=True)
class Alignment:
    """Exponent difference d split into whole-limb and in-limb parts."""

    d: int
    limb_shift: int
    bit_shift: int

    @classmethod
    def for_difference(cls, d: int, limb_width: int) -> "Alignment":
        if d < 0:
            raise ValueError("alignment requires a non-negative exponent difference")
        return cls(d, d // limb_width, d % limb_width)


@dataclass
class ScanStats:
    """How much input the engine consulted.

    The limb counters are prefix counts over each operand's limb array
    (limbs 0 .. count-1 were consulted, anything at or beyond the count was
    never read).  `trailing_bits_examined` counts the trailing positions the
    error scan had to look at before the classification was settled;
    `q_found_at` is the position (1-based in the result's mantissa frame)
    where the fb = 1 scan found the first pair of equal bits, when it did.
    """

    x_limbs_read: int = 0
    y_limbs_read: int = 0
    trailing_bits_examined: int = 0
    q_found_at: int | None = None


@dataclass(frozen=True)
class MainTerm:
    """The truncated top window of the sum.

    `mantissa` holds the first p result bits (low storage bits zeroed), `rb`
    and `fb` the two bits that follow.  When the window addition carried,
    the window was shifted right by one, `exponent` is one above x's, and
    `shifted_out` records the displaced sum bit, which now belongs to the
    error term one position above the first untested input position.
    """

    mantissa: tuple[int, ...]
    exponent: int
    rb: int
    fb: int
    carried: bool
    shifted_out: int | None
    x_limbs_read: int
    y_limbs_read: int


@dataclass(frozen=True)
class AddOutcome:
    result: Float
    ternary: int
    stats: ScanStats


class _XReader:
    """Raw limb access with a read high-water mark; absent limbs read as 0."""

    __slots__ = ("limbs", "count")

    def __init__(self, f: Float) -> None:
        self.limbs = f.limbs
        self.count = 0

    def limb(self, j: int) -> int:
        if j >= len(self.limbs):
            return 0
        if j >= self.count:
            self.count = j + 1
        return self.limbs[j]


class _YReader:
    """Serves y's limbs realigned to x's limb grid, shifting on the fly.

    Block j covers positions j*W+1 .. (j+1)*W of the x frame; y's bit k sits
    at position d + k, so a block is assembled from at most two adjacent y
    limbs.  Reads are counted with a high-water mark; blocks fully outside
    y's stored range cost nothing.
    """

    __slots__ = ("limbs", "w", "mask", "limb_shift", "bit_shift", "count")

    def __init__(self, f: Float, align: Alignment) -> None:
        self.limbs = f.limbs
        self.w = f.limb_width
        self.mask = (1 << f.limb_width) - 1
        self.limb_shift = align.limb_shift
        self.bit_shift = align.bit_shift
        self.count = 0

    def _limb(self, i: int) -> int:
        if i < 0 or i >= len(self.limbs):
            return 0
        if i >= self.count:
            self.count = i + 1
        return self.limbs[i]

    def block(self, j: int) -> int:
        shift = self.bit_shift
        if shift == 0:
            return self._limb(j - self.limb_shift)
        hi = self._limb(j - self.limb_shift - 1)
        lo = self._limb(j - self.limb_shift)
        return ((hi << (self.w - shift)) | (lo >> shift)) & self.mask


def _window_bit(work: list[int], i: int, w: int) -> int:
    return (work[(i - 1) // w] >> (w - 1 - (i - 1) % w)) & 1


def compute_main_term(x: Float, y: Float, precision: int, align: Alignment) -> MainTerm:
    """Exact sum of the first p+2 bits of x and the overlapping bits of y.

    x must be the operand with the larger exponent.  The window is computed
    limb by limb; a carry out of the leading bit bumps the exponent and
    shifts the window right, displacing its lowest bit into the error term.
    """
    w = x.limb_width
    mask = (1 << w) - 1
    window = precision + 2
    nlimbs = -(-window // w)
    tail_keep = window - (nlimbs - 1) * w  # 1..w bits of the last limb inside the window
    tail_mask = (mask << (w - tail_keep)) & mask

    xr = _XReader(x)
    yr = _YReader(y, align)

    work = [xr.limb(j) for j in range(nlimbs)]
    work[-1] &= tail_mask

    carried = False
    if align.d < window:  # otherwise y contributes to the error term only
        carry = 0
        for j in reversed(range(nlimbs)):
            yb = yr.block(j)
            if j == nlimbs - 1:
                yb &= tail_mask
            total = work[j] + yb + carry
            work[j] = total & mask
            carry = total >> w
        carried = carry != 0

    exponent = x.exponent
    shifted_out = None
    if carried:
        shifted_out = _window_bit(work, window, w)
        carry_in = 1
        for j in range(nlimbs):
            cur = work[j]
            work[j] = (carry_in << (w - 1)) | (cur >> 1)
            carry_in = cur & 1
        work[-1] &= tail_mask
        exponent += 1

    rb = _window_bit(work, precision + 1, w)
    fb = _window_bit(work, precision + 2, w)

    res_limbs = -(-precision // w)
    mantissa = work[:res_limbs]
    keep = precision - (res_limbs - 1) * w
    mantissa[-1] &= (mask << (w - keep)) & mask
    return MainTerm(
        tuple(mantissa), exponent, rb, fb, carried, shifted_out, xr.count, yr.count
    )


def classify_error(
    x: Float,
    y: Float,
    align: Alignment,
    fb: int,
    start_pos: int,
    shifted_out: int | None = None,
) -> tuple[ErrorClass, ScanStats]:
    """Compare the error term against 0 and the following bit's weight u.

    `start_pos` is the first x-frame bit position the main term did not
    consume (p + 3).  `shifted_out`, when given, is the sum bit displaced by
    the carry renormalization; its weight puts it one position before
    `start_pos` in the scan order, and it shifts reported positions into the
    result's mantissa frame (one below the x frame).

    With fb = 0 the scan looks for any trailing 1; with fb = 1 it walks the
    per-position digit sums x_i + y_(i-d), which are all 1 exactly while the
    comparison with u stays open, and is settled by the first position where
    the two bits agree: equal zeros put the term below u, equal ones at or
    above it, with equality iff nothing but zeros follows.  Past the end of
    either mantissa no digit 2 can form, so the scan never outlives the
    shorter operand.
    """
    w = x.limb_width
    mask = (1 << w) - 1
    d = align.d
    m = x.precision
    y_end = d + y.precision
    last = max(m, y_end)
    stats = ScanStats()
    xr = _XReader(x)
    yr = _YReader(y, align)
    offset = 0 if shifted_out is None else 1  # result frame sits this far below the x frame

    def scan_for_one(pos: int) -> int | None:
        # First position >= pos where x or aligned y stores a 1 bit, None
        # when no 1 remains.  Every walked position lies inside at least one
        # operand: y either overlaps the window (d < p + 2) or was handled
        # by the shortcut below, so no empty gap is ever crossed.
        while pos <= last:
            j = (pos - 1) // w
            blk = xr.limb(j) | yr.block(j)
            off = (pos - 1) % w
            if off:
                blk &= mask >> off
            if blk:
                found = j * w + (w - blk.bit_length()) + 1
                stats.trailing_bits_examined += found - pos + 1
                return found
            stats.trailing_bits_examined += min((j + 1) * w, last) - pos + 1
            pos = (j + 1) * w + 1
        return None

    def scan_for_pair(pos: int) -> tuple[int | None, int]:
        # First position >= pos where the bits of x and aligned y agree
        # (missing bits read as 0), together with the agreeing bit value.
        # Bounded by the shorter operand: past either mantissa no digit can
        # reach 2, so the term stays below u and the search may stop.
        limit = min(m, y_end)
        while pos <= limit:
            j = (pos - 1) // w
            xb = xr.limb(j)
            z = ~(xb ^ yr.block(j)) & mask
            off = (pos - 1) % w
            if off:
                z &= mask >> off
            keep = limit - j * w
            if keep < w:
                z &= (mask << (w - keep)) & mask
            if z:
                found = j * w + (w - z.bit_length()) + 1
                stats.trailing_bits_examined += found - pos + 1
                return found, (xb >> (w - 1 - (found - 1) % w)) & 1
            stats.trailing_bits_examined += min((j + 1) * w, limit) - pos + 1
            pos = (j + 1) * w + 1
        return None, 0

    def finish(cls: ErrorClass) -> tuple[ErrorClass, ScanStats]:
        stats.x_limbs_read = xr.count
        stats.y_limbs_read = yr.count
        return cls, stats

    if fb == 0:
        if shifted_out is not None:
            stats.trailing_bits_examined += 1
            if shifted_out:
                return finish(ErrorClass.GT_ZERO_LT_U)
        elif d >= start_pos - 1:
            # y lies wholly below the consumed window; its leading 1 makes
            # the error term positive without any of its bits being read.
            return finish(ErrorClass.GT_ZERO_LT_U)
        hit = scan_for_one(start_pos)
        return finish(ErrorClass.EQ_ZERO if hit is None else ErrorClass.GT_ZERO_LT_U)

    if shifted_out is not None:
        stats.trailing_bits_examined += 1
        if shifted_out == 0:
            # A digit 0 ahead of every remaining input bit: nothing below
            # can close the gap up to u.
            stats.q_found_at = start_pos
            return finish(ErrorClass.GT_ZERO_LT_U)
    q, ones = scan_for_pair(start_pos)
    if q is None:
        return finish(ErrorClass.GT_ZERO_LT_U)
    stats.q_found_at = q + offset
    if not ones:
        return finish(ErrorClass.GT_ZERO_LT_U)
    trailing_one = scan_for_one(q + 1)
    return finish(ErrorClass.EQ_U if trailing_one is None else ErrorClass.GT_U)


# Rows: (rb, fb, error class) -> (r, s, carry into the p-bit mantissa).
# With fb = 1 an error term at or above u closes the gap to the next
# multiple of rb's weight, so rb flips; when rb was already 1 the carry
# moves on into the mantissa itself.
_COMBINE = {
    (0, 0, ErrorClass.EQ_ZERO): (0, 0, False),
    (0, 0, ErrorClass.GT_ZERO_LT_U): (0, 1, False),
    (0, 1, ErrorClass.GT_ZERO_LT_U): (0, 1, False),
    (0, 1, ErrorClass.EQ_U): (1, 0, False),
    (0, 1, ErrorClass.GT_U): (1, 1, False),
    (1, 0, ErrorClass.EQ_ZERO): (1, 0, False),
    (1, 0, ErrorClass.GT_ZERO_LT_U): (1, 1, False),
    (1, 1, ErrorClass.GT_ZERO_LT_U): (1, 1, False),
    (1, 1, ErrorClass.EQ_U): (0, 0, True),
    (1, 1, ErrorClass.GT_U): (0, 1, True),
}


def combine_rfe(rb: int, fb: int, error_class: ErrorClass) -> tuple[RoundSticky, bool]:
    """Fold the following bit and the error class into the final (r, s) pair.

    The second element asks the caller to add one ulp to the truncated
    mantissa before rounding; the (r, s) pair stays valid afterwards even if
    that carry renormalizes the mantissa, because the leftover error is far
    below the new ulp.
    """
    try:
        r, s, carry = _COMBINE[(rb, fb, error_class)]
    except KeyError:
        raise InvalidCombination(
            f"no input can produce rb={rb}, fb={fb}, {error_class}"
        ) from None
    return RoundSticky(r, s), carry


def _ordered(x: Float, y: Float) -> tuple[Float, Float]:
    # Deterministic and symmetric in its arguments so that addition commutes
    # exactly, statistics included.
    if (x.exponent, x.precision, x.limbs) >= (y.exponent, y.precision, y.limbs):
        return x, y
    return y, x


def add_positive(
    x: Float,
    y: Float,
    precision: int,
    mode: RoundingMode,
    *,
    ctx: Context = DEFAULT_CONTEXT,
) -> AddOutcome | Overflow:
    """Round x + y to `precision` bits, exactly as if the sum were computed
    with unbounded precision first, and report the ternary value.

    Both operands must be positive and share a limb width.  Returns an
    Overflow record instead of an outcome when the rounded result's exponent
    would exceed ctx.emax.
    """
    if x.sign < 0 or y.sign < 0:
        raise ValueError("add_positive handles positive operands only")
    if x.limb_width != y.limb_width:
        raise ValueError("operands must share a limb width")
    ctx.check_precision(precision)

    a, b = _ordered(x, y)
    align = Alignment.for_difference(a.exponent - b.exponent, a.limb_width)
    term = compute_main_term(a, b, precision, align)
    error_class, scan = classify_error(
        a, b, align, term.fb, precision + 3, term.shifted_out
    )
    rs, mantissa_carry = combine_rfe(term.rb, term.fb, error_class)

    w = a.limb_width
    limbs, exponent = term.mantissa, term.exponent
    if mantissa_carry:
        limbs, exponent, _ = apply_increment(limbs, precision, exponent, w, ctx.emax)
    last_bit = (limbs[-1] >> (w - 1 - (precision - 1) % w)) & 1
    decision = decide_round(mode, rs, last_bit)
    if decision.action is RoundAction.INCREMENT:
        limbs, exponent, _ = apply_increment(limbs, precision, exponent, w, ctx.emax)
    if exponent > ctx.emax:
        return Overflow(mode, 1, decision.ternary)

    stats = ScanStats(
        x_limbs_read=max(term.x_limbs_read, scan.x_limbs_read),
        y_limbs_read=max(term.y_limbs_read, scan.y_limbs_read),
        trailing_bits_examined=scan.trailing_bits_examined,
        q_found_at=scan.q_found_at,
    )
    result = Float(1, exponent, precision, limbs, w)
    return AddOutcome(result, decision.ternary, stats)
