"""``dgtor`` command line.

Exit codes: 0 success, 1 selftest failure, 2 parse or validation error,
3 resource guard abort.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .exceptions import CutoffTooLarge, ParseError, ValidationError
from .spanspec import fixture, list_fixtures, parse_spec, run

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dgtor", description="Differential Tor of spans of graded-commutative algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--max-degree", type=int, help="override the spec's max_degree")
        sp.add_argument("--ring", help="override the coefficients (Z, Q or F<p>)")
        sp.add_argument("--oracle", action="store_true", help="cross-check against the Koszul complex")
        sp.add_argument("--json", metavar="PATH", help="also write the structured report here")
        sp.add_argument("--timing", action="store_true", help="include wall-clock time in the output")

    c = sub.add_parser("compute", help="run a span specification file")
    c.add_argument("spec", help="path to a TOML span document")
    common(c)
    f = sub.add_parser("fixture", help="run a named fixture")
    f.add_argument("name", help="fixture name, e.g. su4_u1 or cyclic_group:6")
    common(f)
    sub.add_parser("list-fixtures", help="list the shipped fixtures")
    sub.add_parser("selftest", help="run the quick invariant checks")
    return p


def _report(spec, args) -> int:
    spec = spec.with_overrides(args.max_degree, args.ring, args.oracle)
    report = run(spec)
    sys.stdout.write(report.to_text(args.timing))
    if args.json:
        Path(args.json).write_text(report.to_json(args.timing))
    if report.oracle is not None and not report.oracle["agrees"]:
        return EXIT_FAIL
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "list-fixtures":
            for name, desc in list_fixtures():
                print(f"{name:<20} {desc}")
            return EXIT_OK
        if args.command == "selftest":
            from .selftest import run_selftest

            return EXIT_OK if run_selftest() else EXIT_FAIL
        if args.command == "compute":
            try:
                text = Path(args.spec).read_text()
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INVALID
            return _report(parse_spec(text), args)
        try:
            spec = fixture(args.name)
        except (KeyError, ValueError) as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_INVALID
        return _report(spec, args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for d in exc.diagnostics:
            print(f"  {d}", file=sys.stderr)
        return EXIT_INVALID
    except CutoffTooLarge as exc:
        print(f"error: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
