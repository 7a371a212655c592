"""Binary floating-point values with an independent precision per value.

A value is ``sign * 0.b1 b2 ... bp * 2**exponent`` with ``b1 = 1``: the
mantissa is a pure fraction in [1/2, 1), there is no hidden bit and there
are no subnormals.  Mantissa bits are stored in an array of machine-word
limbs, most significant limb first; bits of the lowest limb that lie below
the precision are kept at zero so that two equal values always have equal
storage.

Values are immutable.  Exponent range and the precision cap are not
properties of a value but of a :class:`Context` checked at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_EMIN = 1 - 2**30
DEFAULT_EMAX = 2**30 - 1
# Cap chosen so that bit positions and limb counts stay comfortably inside
# machine integers on any host; large enough for any realistic use.
DEFAULT_MAX_PRECISION = 2**24

_LIMB_WIDTHS = (32, 64)


class FloatValueError(ValueError):
    """A floating-point value violates a construction invariant."""


class InvalidPrecision(FloatValueError):
    """Precision is not an int in [2, max_precision] or disagrees with the bits given."""


class NotNormalized(FloatValueError):
    """Leading mantissa bit is not 1, or non-significant storage bits are not 0."""


class ExponentOutOfRange(FloatValueError):
    """Exponent lies outside the configured [emin, emax] range."""


@dataclass(frozen=True)
class Context:
    """Construction-time bounds: limb width, exponent range, precision cap."""

    limb_width: int = 64
    emin: int = DEFAULT_EMIN
    emax: int = DEFAULT_EMAX
    max_precision: int = DEFAULT_MAX_PRECISION

    def __post_init__(self) -> None:
        if self.limb_width not in _LIMB_WIDTHS:
            raise ValueError(f"limb_width must be one of {_LIMB_WIDTHS}")
        if self.emin > self.emax:
            raise ValueError("emin must not exceed emax")
        if self.max_precision < 2:
            raise ValueError("max_precision must be at least 2")

    def check_precision(self, precision: int) -> None:
        if not isinstance(precision, int) or isinstance(precision, bool):
            raise InvalidPrecision(f"precision must be an int, got {precision!r}")
        if precision < 2 or precision > self.max_precision:
            raise InvalidPrecision(
                f"precision must lie in [2, {self.max_precision}], got {precision}"
            )

    def check_exponent(self, exponent: int) -> None:
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise ExponentOutOfRange(f"exponent must be an int, got {exponent!r}")
        if not self.emin <= exponent <= self.emax:
            raise ExponentOutOfRange(
                f"exponent {exponent} outside [{self.emin}, {self.emax}]"
            )


DEFAULT_CONTEXT = Context()


def limb_count(precision: int, limb_width: int) -> int:
    return -(-precision // limb_width)


def mantissa_is_normalized(limbs: tuple[int, ...], precision: int, limb_width: int) -> bool:
    """True iff `limbs` is a valid normalized p-bit mantissa: correct length,
    every limb inside the word range, top bit 1, and all storage bits below
    the precision zero."""
    if precision < 2 or limb_width not in _LIMB_WIDTHS:
        return False
    if len(limbs) != limb_count(precision, limb_width):
        return False
    if any(limb < 0 or limb >> limb_width for limb in limbs):
        return False
    if not limbs[0] >> (limb_width - 1) & 1:
        return False
    spare = len(limbs) * limb_width - precision
    return spare == 0 or not limbs[-1] & ((1 << spare) - 1)


@dataclass(frozen=True, slots=True)
class Float:
    """An immutable normalized value ``sign * 0.b1..bp * 2**exponent``.

    ``limbs`` holds the mantissa most significant limb first; bit i (1-based,
    bit 1 is the leading 1) lives in ``limbs[(i-1) // limb_width]``.
    """

    sign: int
    exponent: int
    precision: int
    limbs: tuple[int, ...]
    limb_width: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise FloatValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if not isinstance(self.precision, int) or self.precision < 2:
            raise InvalidPrecision(f"precision must be an int >= 2, got {self.precision!r}")
        if not mantissa_is_normalized(self.limbs, self.precision, self.limb_width):
            raise NotNormalized(
                f"mantissa {self.limbs!r} is not a normalized "
                f"{self.precision}-bit value at width {self.limb_width}"
            )

    def mantissa_int(self) -> int:
        """The mantissa as one integer of len(limbs)*limb_width bits."""
        acc = 0
        for limb in self.limbs:
            acc = (acc << self.limb_width) | limb
        return acc

    def mantissa_bits(self) -> str:
        """The p significant mantissa bits as a '0'/'1' string."""
        width = len(self.limbs) * self.limb_width
        return format(self.mantissa_int(), f"0{width}b")[: self.precision]

    def as_fraction(self) -> Fraction:
        """Exact rational value; intended for tests and diagnostics."""
        width = len(self.limbs) * self.limb_width
        shift = self.exponent - width
        mag = self.mantissa_int()
        if shift >= 0:
            return Fraction(self.sign * (mag << shift))
        return Fraction(self.sign * mag, 1 << -shift)


def make_float(
    sign: int,
    exponent: int,
    precision: int,
    bits: str,
    *,
    ctx: Context = DEFAULT_CONTEXT,
) -> Float:
    """Build a Float from its mantissa written out as a bit string.

    `bits` must contain exactly `precision` characters from {'0', '1'} and
    start with '1' (normalization).  The exponent is checked against `ctx`.
    """
    ctx.check_precision(precision)
    ctx.check_exponent(exponent)
    if len(bits) != precision:
        raise InvalidPrecision(
            f"got {len(bits)} mantissa bits for precision {precision}"
        )
    if bits.strip("01"):
        raise FloatValueError(f"mantissa may contain only 0 and 1: {bits!r}")
    if bits[0] != "1":
        raise NotNormalized(f"leading mantissa bit must be 1: {bits!r}")
    return make_float_from_int(sign, exponent, precision, int(bits, 2), ctx=ctx)


def make_float_from_int(
    sign: int,
    exponent: int,
    precision: int,
    mantissa: int,
    *,
    ctx: Context = DEFAULT_CONTEXT,
) -> Float:
    """Build a Float from the mantissa packed into an int of `precision` bits."""
    ctx.check_precision(precision)
    ctx.check_exponent(exponent)
    if mantissa >> (precision - 1) != 1:
        raise NotNormalized(
            f"mantissa {mantissa:#x} does not have exactly {precision} bits with a leading 1"
        )
    width = ctx.limb_width
    total = limb_count(precision, width) * width
    return Float(sign, exponent, precision, limbs_from_int(mantissa << (total - precision), total, width), width)


def limbs_from_int(value: int, total_bits: int, limb_width: int) -> tuple[int, ...]:
    """Split a `total_bits`-wide integer into limbs, most significant first."""
    mask = (1 << limb_width) - 1
    count = total_bits // limb_width
    return tuple((value >> (limb_width * j)) & mask for j in reversed(range(count)))


def get_bit(x: Float, i: int) -> int:
    """Mantissa bit at 1-based position i; positions beyond the precision read as 0."""
    if i < 1:
        raise ValueError(f"bit positions start at 1, got {i}")
    if i > x.precision:
        return 0
    w = x.limb_width
    return (x.limbs[(i - 1) // w] >> (w - 1 - (i - 1) % w)) & 1
