"""Command-line entry point: ``wzpi {verify,sum,pi,bauer,limit}``.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 on usage errors, 3 on an internal invariant violation.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from .pi_series import (
    InvariantError,
    bauer_check,
    limit_check_minus_half,
    machin_pi,
    pi_digits_report,
)
from .wz_verify import (
    BUILTIN_PAIRS,
    VerifyReport,
    eq3_check,
    get_pair,
    parse_pair,
    verify_grid,
    verify_symbolic,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _dumps(d: dict) -> str:
    return json.dumps(d, separators=(",", ":"))


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _pos_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wzpi",
        description="Exact WZ-certificate verification and digits of pi from Ramanujan's series.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    v = sub.add_parser("verify", help="verify a WZ pair")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--pair", choices=sorted(BUILTIN_PAIRS), help="built-in pair name")
    src.add_argument("--pair-file", type=Path, help="pair in the term text format (or JSON)")
    v.add_argument("--symbolic", action="store_true", help="check the identity symbolically")
    v.add_argument("--grid", type=_nonneg_int, metavar="N", help="check on 0 <= n, k <= N")
    v.add_argument("--json", action="store_true")

    s = sub.add_parser("sum", help="both sides of the terminating identity at n")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s.add_argument("--json", action="store_true")

    p = sub.add_parser("pi", help="digits of pi from the 1103 + 26390k series")
    p.add_argument("--digits", type=_pos_int, required=True)
    p.add_argument("--oracle", action="store_true", help="also run the Machin oracle and compare")
    p.add_argument("--json", action="store_true")

    for name, help_text in (
        ("bauer", "partial sums of the 2/pi series against 2/pi"),
        ("limit", "the terminating identity's summand at n = -1/2"),
    ):
        c = sub.add_parser(name, help=help_text)
        c.add_argument("--terms", type=_pos_int, required=True, metavar="N")
        c.add_argument("--prec", type=_pos_int, default=128, metavar="BITS")
        c.add_argument("--json", action="store_true")
    return parser


def _cmd_verify(args: argparse.Namespace, out: io.TextIOBase) -> int:
    if args.pair_file is not None:
        pair = parse_pair(args.pair_file.read_text())
    else:
        pair = get_pair(args.pair)
    symbolic = args.symbolic or args.grid is None
    reports: List[VerifyReport] = []
    if symbolic:
        reports.append(verify_symbolic(pair))
    if args.grid is not None:
        reports.append(verify_grid(pair, args.grid, args.grid))
    report = reports[0]
    for r in reports[1:]:
        report = report.merge(r)
    if args.json:
        print(report.to_json(), file=out)
    else:
        print(f"orientation: {report.orientation}", file=out)
        if report.symbolic_witness is not None:
            witness = report.symbolic_witness
            print(f"symbolic: {'zero' if witness.is_zero() else 'nonzero'}", file=out)
            if not witness.is_zero():
                print(f"witness: {witness}", file=out)
        if report.grid_points_checked is not None:
            print(
                f"grid: checked={report.grid_points_checked} "
                f"skipped={report.grid_points_skipped_at_poles} "
                f"failed={report.grid_points_failed}",
                file=out,
            )
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_sum(args: argparse.Namespace, out: io.TextIOBase) -> int:
    check = eq3_check(args.n)
    if args.json:
        print(_dumps(check.to_dict()), file=out)
    else:
        print(f"lhs = {check.lhs}", file=out)
        print(f"rhs = {check.rhs}", file=out)
        print(f"equal = {'true' if check.equal else 'false'}", file=out)
    return EXIT_OK if check.equal else EXIT_FAIL


def _cmd_pi(args: argparse.Namespace, out: io.TextIOBase, err: io.TextIOBase) -> int:
    result = pi_digits_report(args.digits)
    agrees: Optional[bool] = None
    if args.oracle:
        agrees = machin_pi(args.digits) == result.digits
        if not agrees:
            print("pi digits disagree with the Machin oracle", file=err)
    if args.json:
        print(
            _dumps(
                {
                    "digits": result.digits,
                    "terms": result.terms,
                    "scale_bits": result.scale_bits,
                    "oracle_agrees": agrees,
                }
            ),
            file=out,
        )
    else:
        print(result.digits, file=out)
    return EXIT_FAIL if agrees is False else EXIT_OK


def _cmd_series(args: argparse.Namespace, out: io.TextIOBase) -> int:
    check = bauer_check if args.command == "bauer" else limit_check_minus_half
    report = check(args.terms, args.prec)
    d = report.to_dict()
    if args.json:
        print(_dumps(d), file=out)
    else:
        for key, value in d.items():
            if isinstance(value, bool):
                value = "true" if value else "false"
            print(f"{key}: {value}", file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


@dataclass
class RunResult:
    exit_code: int
    stdout: str
    stderr: str


def _dispatch(argv: Sequence[str], out: io.TextIOBase, err: io.TextIOBase) -> int:
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        if args.command == "verify":
            return _cmd_verify(args, out)
        if args.command == "sum":
            return _cmd_sum(args, out)
        if args.command == "pi":
            return _cmd_pi(args, out, err)
        return _cmd_series(args, out)
    except (InvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        parser.print_usage(err)
        return EXIT_USAGE


def run(argv: Sequence[str]) -> RunResult:
    """Run the CLI in-process, capturing its output."""
    out, err = io.StringIO(), io.StringIO()
    code = _dispatch(argv, out, err)
    return RunResult(code, out.getvalue(), err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    return _dispatch(sys.argv[1:] if argv is None else argv, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
