"""Command-line front end.

Three subcommands:

* ``xadd add -p P -m MODE X Y`` prints ``result ternary`` for one addition
  (append ``# bits_examined=N`` with ``--stats``).
* ``xadd verify`` generates pseudo-random cases from a seed and cross-checks
  the limb engine against the big-integer oracle in all four modes.
* ``xadd check FILE`` replays a fixture file and compares recorded results.

Exit codes: 0 ok, 1 usage or bad input, 2 overflow, 3 mismatch.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import DEFAULT_CONTEXT, Context, Float, FloatValueError, make_float_from_int
from .engine import add_positive
from .oracle import exact_add_round
from .rounding import Overflow, RoundingMode, round_to_prec
from .textio import (
    FixtureCase,
    ParseError,
    SpecialValue,
    format_fixture_line,
    format_float,
    format_special,
    format_ternary,
    parse_fixture_line,
    parse_token,
)

_MODE_NAMES = [mode.value for mode in RoundingMode]


@dataclass(frozen=True)
class CliConfig:
    mode: RoundingMode = RoundingMode.NEAREST_EVEN
    precision: int = 2
    seed: int = 0
    count: int = 1000
    max_prec: int = 64
    stats: bool = False


class _UsageError(Exception):
    pass


class _RoundedOnly:
    """Adapter giving a (Float, ternary) pair the outcome attributes."""

    def __init__(self, result: Float, ternary: int) -> None:
        self.result = result
        self.ternary = ternary


class _Parser(argparse.ArgumentParser):
    # Report flag problems through our exit-code contract instead of
    # argparse's default SystemExit(2).
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _outcome_text(outcome) -> str:
    if isinstance(outcome, Overflow):
        token = format_special(SpecialValue("overflow", outcome.sign))
    else:
        token = format_float(outcome.result)
    return f"{token} {format_ternary(outcome.ternary)}"


def _parse_operand(token: str, ctx: Context) -> Float | None:
    """Accept a finite value or a signed zero; reject the other specials."""
    value = parse_token(token, ctx=ctx)
    if isinstance(value, Float):
        return value
    if value.kind == "zero":
        return None
    raise ParseError(f"{token} is not a valid addend")


def cmd_add(x_token: str, y_token: str | None, config: CliConfig, *, ctx: Context = DEFAULT_CONTEXT) -> int:
    try:
        x = _parse_operand(x_token, ctx)
        y = _parse_operand(y_token, ctx) if y_token is not None else None
        if x is None:
            x, y = y, None
        if x is None:
            # zero + zero needs no rounding
            print(f"{format_special(SpecialValue('zero', 1))} {format_ternary(0)}")
            return 0
        if y is None:
            rounded = round_to_prec(x, config.precision, config.mode, ctx=ctx)
            bits_examined = 0
            if not isinstance(rounded, Overflow):
                rounded = _RoundedOnly(*rounded)
        else:
            rounded = add_positive(x, y, config.precision, config.mode, ctx=ctx)
            if not isinstance(rounded, Overflow):
                bits_examined = rounded.stats.trailing_bits_examined
    except (ParseError, FloatValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    line = _outcome_text(rounded)
    if isinstance(rounded, Overflow):
        print(line)
        return 2
    if config.stats:
        line += f" # bits_examined={bits_examined}"
    print(line)
    return 0


def _random_mantissa(rng: random.Random, bits: int) -> int:
    """Normalized mantissa with the shapes that historically break adders:
    powers of two, all-ones carry chains, sparse bits, one-runs, uniform."""
    top = 1 << (bits - 1)
    style = rng.randrange(6)
    if style == 0:
        return top
    if style == 1:
        return (1 << bits) - 1
    if style == 2:
        value = top
        for _ in range(1 + bits // 8):
            value |= 1 << rng.randrange(bits)
        return value
    if style == 3:
        run = rng.randint(1, bits)
        return ((1 << run) - 1) << (bits - run)
    return top | rng.getrandbits(bits - 1)


def _random_exponent(rng: random.Random, ctx: Context) -> int:
    roll = rng.randrange(16)
    if roll == 0:
        return ctx.emax - rng.randint(0, 2)
    if roll == 1:
        return ctx.emin + rng.randint(0, 64)
    return rng.randint(-(1 << 12), 1 << 12)


def _random_case(rng: random.Random, max_prec: int, ctx: Context) -> tuple[Float, Float, int]:
    p = rng.randint(2, max_prec)
    w = ctx.limb_width
    kind = rng.randrange(10)
    if kind == 0:
        # Exact tie: x representable at p, y a lone half-ulp below it.
        m = rng.randint(2, p)
        d = p
        mantissas = (_random_mantissa(rng, m), 0b10)
        sizes = (m, 2)
    else:
        m = rng.randint(2, max_prec)
        n = rng.randint(2, max_prec)
        if kind <= 3:
            d = rng.randint(0, 3)
        elif kind == 4:
            d = max(0, p + rng.randint(-2, 2))
        elif kind == 5:
            d = max(0, rng.choice((w, 2 * w, 3 * w)) + rng.randint(-1, 1))
        elif kind == 6:
            d = p + 2 + rng.randint(1, 2 * w)
        elif kind == 7:
            d = rng.randint(0, max(m, n) + 2)
        else:
            d = rng.randint(0, p + max(m, n) + 4)
        mantissas = (_random_mantissa(rng, m), _random_mantissa(rng, n))
        sizes = (m, n)
    e = min(max(_random_exponent(rng, ctx), ctx.emin + d), ctx.emax)
    x = make_float_from_int(1, e, sizes[0], mantissas[0], ctx=ctx)
    y = make_float_from_int(1, e - d, sizes[1], mantissas[1], ctx=ctx)
    return x, y, p


def _outcomes_equal(a, b) -> bool:
    if isinstance(a, Overflow) or isinstance(b, Overflow):
        return a == b
    return a.result == b.result and a.ternary == b.ternary


def cmd_verify(config: CliConfig, *, ctx: Context = DEFAULT_CONTEXT) -> int:
    rng = random.Random(config.seed)
    for _ in range(config.count):
        x, y, p = _random_case(rng, config.max_prec, ctx)
        for mode in RoundingMode:
            got = add_positive(x, y, p, mode, ctx=ctx)
            want = exact_add_round(x, y, p, mode, ctx=ctx)
            if not _outcomes_equal(got, want):
                if isinstance(want, Overflow):
                    line = format_fixture_line(x, y, p, mode, want)
                else:
                    line = format_fixture_line(x, y, p, mode, want.result, want.ternary)
                print(f"{line} # engine: {_outcome_text(got)}")
                return 3
    print(f"PASS n={config.count}")
    return 0


def _matches_expected(outcome, case: FixtureCase) -> bool:
    if isinstance(outcome, Overflow):
        return (
            isinstance(case.expected, SpecialValue)
            and case.expected.sign == outcome.sign
            and case.ternary == outcome.ternary
        )
    return (
        isinstance(case.expected, Float)
        and outcome.result == case.expected
        and outcome.ternary == case.ternary
    )


def cmd_check(path: str, *, ctx: Context = DEFAULT_CONTEXT) -> int:
    try:
        text = Path(path).read_text()
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    count = 0
    mismatches = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        try:
            case = parse_fixture_line(line, ctx=ctx)
        except ParseError as err:
            print(f"error: line {lineno}: {err}", file=sys.stderr)
            return 1
        if case is None:
            continue
        count += 1
        outcome = add_positive(case.x, case.y, case.precision, case.mode, ctx=ctx)
        if _matches_expected(outcome, case):
            print(f"ok   line {lineno}")
        else:
            mismatches += 1
            print(f"FAIL line {lineno}: got {_outcome_text(outcome)}")
    if mismatches:
        print(f"FAIL n={count} mismatches={mismatches}")
        return 3
    print(f"PASS n={count}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="xadd", description="Exactly rounded addition at mixed precisions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_add = sub.add_parser("add", help="add two positive values and print result + ternary")
    p_add.add_argument("-p", "--prec", type=int, required=True, help="target precision in bits")
    p_add.add_argument("-m", "--mode", choices=_MODE_NAMES, default="nearest")
    p_add.add_argument("--stats", action="store_true", help="append # bits_examined=N")
    p_add.add_argument("x")
    p_add.add_argument("y", nargs="?", default=None, help="second addend (omit or pass zero(+) to round x alone)")

    p_verify = sub.add_parser("verify", help="differential-test the engine against the oracle")
    p_verify.add_argument("--seed", type=int, default=None, help="PRNG seed (default: random, printed)")
    p_verify.add_argument("--count", type=int, default=1000, help="number of cases (default 1000)")
    p_verify.add_argument("--max-prec", type=int, default=64, help="precision bound (default 64)")

    p_check = sub.add_parser("check", help="replay a fixture file")
    p_check.add_argument("fixture_path")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    if args.command == "add":
        config = CliConfig(mode=RoundingMode(args.mode), precision=args.prec, stats=args.stats)
        return cmd_add(args.x, args.y, config)

    if args.command == "verify":
        if args.count < 1:
            print("error: --count must be at least 1", file=sys.stderr)
            return 1
        if not 2 <= args.max_prec <= DEFAULT_CONTEXT.max_precision:
            print(f"error: --max-prec must be in [2, {DEFAULT_CONTEXT.max_precision}]", file=sys.stderr)
            return 1
        seed = args.seed
        if seed is None:
            seed = random.getrandbits(64)
            print(f"# seed={seed}")
        config = CliConfig(seed=seed, count=args.count, max_prec=args.max_prec)
        return cmd_verify(config)

    return cmd_check(args.fixture_path)


if __name__ == "__main__":
    sys.exit(main())
