"""Command-line front end: verify, scan, lift, bench.

Exit codes: 0 when every emitted check record passes, 1 when any check
fails (the structural suite carries pinned deviations that fail by
design, so `verify` exits 1 on every grid point; the lift suite has
none and exits 0), 2 for invalid or out-of-range parameters.
"""

import argparse
import sys
from pathlib import Path

from .bench import format_bench, run_bench
from .errors import HhoneError, InvalidParameters
from .report import full_verification, lift_report, scan_summary, to_json, to_text

DEFAULT_CAP = 13
LARGE_CAP = 31


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hhone",
        description="exact verification suites for q-commutation local algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every check family at one (p, e) point")
    v.add_argument("--p", type=int, required=True, help="odd prime")
    v.add_argument("--e", type=int, required=True, help="order of q; must divide p-1")
    v.add_argument("--q", type=int, default=None,
                   help="explicit q of order e (default: a power of the least primitive root)")
    v.add_argument("--json", dest="json_path", default=None, metavar="PATH",
                   help="also write the report as JSON")
    v.add_argument("--allow-large", action="store_true",
                   help=f"raise the p cap from {DEFAULT_CAP} to {LARGE_CAP} (minutes of runtime)")

    s = sub.add_parser("scan", help="tabulate measured dimensions over the whole grid")
    s.add_argument("--p-max", type=int, default=DEFAULT_CAP)
    s.add_argument("--json", dest="json_path", default=None, metavar="PATH")
    s.add_argument("--allow-large", action="store_true",
                   help=f"raise the p-max cap from {DEFAULT_CAP} to {LARGE_CAP}")

    l = sub.add_parser("lift", help="run the integer-lift suite at one odd prime")
    l.add_argument("--p", type=int, required=True)
    l.add_argument("--json", dest="json_path", default=None, metavar="PATH")

    b = sub.add_parser("bench", help="compare the compiled and fallback kernels")
    b.add_argument("--sizes", type=int, nargs="+", default=[48, 96, 192])
    b.add_argument("--repeats", type=int, default=3)
    return parser


def _check_cap(p, allow_large, what="p"):
    cap = LARGE_CAP if allow_large else DEFAULT_CAP
    if p > cap:
        hint = "" if allow_large else " (pass --allow-large to raise the cap to %d)" % LARGE_CAP
        raise InvalidParameters(f"{what}={p} exceeds the cap {cap}{hint}")
    if allow_large and p > DEFAULT_CAP:
        print(f"warning: {what}={p} may take minutes", file=sys.stderr)


def _emit(report, json_path):
    sys.stdout.write(to_text(report))
    if json_path:
        Path(json_path).write_text(to_json(report), encoding="utf-8")


def _cmd_verify(args):
    _check_cap(args.p, args.allow_large)
    if args.e < 2 or (args.p - 1) % args.e:
        print("error: e must divide p-1 (and satisfy e >= 2)", file=sys.stderr)
        return 2
    report = full_verification(args.p, args.e, args.q)
    _emit(report, args.json_path)
    return 0 if all(r["pass"] for r in report["checks"]) else 1


def _cmd_scan(args):
    _check_cap(args.p_max, args.allow_large, what="p-max")
    report = scan_summary(args.p_max)
    _emit(report, args.json_path)
    return 0


def _cmd_lift(args):
    report = lift_report(args.p)
    _emit(report, args.json_path)
    return 0 if all(r["pass"] for r in report["checks"]) else 1


def _cmd_bench(args):
    rows = run_bench(sizes=tuple(args.sizes), repeats=args.repeats)
    sys.stdout.write(format_bench(rows))
    return 0 if all(row["agree"] for row in rows) else 1


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {
        "verify": _cmd_verify,
        "scan": _cmd_scan,
        "lift": _cmd_lift,
        "bench": _cmd_bench,
    }[args.command]
    try:
        return handler(args)
    except HhoneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
