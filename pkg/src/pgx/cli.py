"""Command-line front end for the classification toolkit.

Exit codes: 0 success or affirmative verdict, 1 negative verdict or failed
selftest, 2 usage or input error.  Tuples and specs are accepted both as
JSON objects and as positional comma lists.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys

from .classify import compute_inv
from .enumeration import enumerate_tuples
from .group import GroupSpec, construct, iter_table_rows
from .invariants import InvariantTuple, validate
from .iso_oracle import are_isomorphic
from .modarith import is_prime
from .selftest import run_criteria


def _parse_tuple(text: str) -> InvariantTuple:
    text = text.strip()
    if text.startswith("{"):
        return InvariantTuple.from_json(text)
    return InvariantTuple.from_positional(text)


def _parse_spec(text: str) -> GroupSpec:
    text = text.strip()
    if text.startswith("{"):
        return GroupSpec.from_json(text)
    return GroupSpec.from_positional(text)


def _fail(msg: str) -> int:
    print(msg, file=sys.stderr)
    return 2


def _cmd_enumerate(args: argparse.Namespace) -> int:
    if not is_prime(args.p):
        return _fail("p must be prime")
    if args.max_order_exp < 0:
        return _fail("max-order-exp must be non-negative")
    tuples = enumerate_tuples(args.p, args.max_order_exp)
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow([f.name for f in dataclasses.fields(InvariantTuple)])
        for t in tuples:
            writer.writerow(t.as_tuple())
    else:
        for t in tuples:
            print(t.to_json())
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    t = _parse_tuple(args.tuple)
    report = validate(t)
    print(report.to_json())
    return 0 if report.valid else 1


def _cmd_construct(args: argparse.Namespace) -> int:
    t = _parse_tuple(args.tuple)
    report = validate(t)
    if not report.valid:
        return _fail(f"invalid tuple, violated conditions: {','.join(report.violations)}")
    G = construct(t)
    print(G.to_json())
    if args.table:
        for i, j, k in iter_table_rows(G):
            print(f"{i},{j},{k}")
    return 0


def _cmd_inv(args: argparse.Namespace) -> int:
    G = _parse_spec(args.spec)
    tup, witness = compute_inv(G, threads=args.threads)
    out = {
        "tuple": json.loads(tup.to_json()),
        "b1": list(witness.b1),
        "b2": list(witness.b2),
    }
    print(json.dumps(out, separators=(",", ":")))
    return 0


def _cmd_iso(args: argparse.Namespace) -> int:
    A = _parse_spec(args.a)
    B = _parse_spec(args.b)
    verdict, witness = are_isomorphic(A, B)
    out = {
        "isomorphic": verdict,
        "witness": None if witness is None else [list(g) for g in witness],
    }
    print(json.dumps(out, separators=(",", ":")))
    return 0 if verdict else 1


def _cmd_selftest(args: argparse.Namespace) -> int:
    if (args.p is None) != (args.max_order_exp is None):
        return _fail("selftest needs both --p and --max-order-exp, or neither")
    if args.p is not None and not is_prime(args.p):
        return _fail("p must be prime")
    results = run_criteria(args.p, args.max_order_exp, threads=args.threads)
    failed = 0
    for r in results:
        verdict = "PASS" if r.passed else "FAIL"
        print(f"criterion {r.number} ({r.name}): {verdict} [{r.seconds:.1f}s] {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results)} criteria: {len(results) - failed} passed, {failed} failed")
    return 0 if failed == 0 else 1


def _cmd_report(args: argparse.Namespace) -> int:
    if not is_prime(args.p):
        return _fail("p must be prime")
    if args.max_order_exp < 0:
        return _fail("max-order-exp must be non-negative")
    from .report import write_report

    csv_path, png_path = write_report(args.p, args.max_order_exp, args.out_dir)
    print(csv_path)
    print(png_path)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgx",
        description="classification toolkit for 2-generated cyclic-by-abelian p-groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    threads_default = os.cpu_count() or 1

    p_enum = sub.add_parser("enumerate", help="list all valid invariant tuples")
    p_enum.add_argument("--p", type=int, required=True)
    p_enum.add_argument("--max-order-exp", type=int, required=True)
    p_enum.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_enum.set_defaults(func=_cmd_enumerate)

    p_val = sub.add_parser("validate", help="check a tuple against the conditions")
    p_val.add_argument("tuple", help="tuple as JSON or a 12-entry comma list")
    p_val.set_defaults(func=_cmd_validate)

    p_con = sub.add_parser("construct", help="build the canonical group of a tuple")
    p_con.add_argument("--tuple", required=True, help="tuple as JSON or comma list")
    p_con.add_argument("--table", action="store_true", help="also print the multiplication table")
    p_con.set_defaults(func=_cmd_construct)

    p_inv = sub.add_parser("inv", help="compute the invariant tuple of a group")
    p_inv.add_argument("spec", help="group as JSON or an 8-entry comma list")
    p_inv.add_argument("--threads", type=int, default=threads_default)
    p_inv.set_defaults(func=_cmd_inv)

    p_iso = sub.add_parser("iso", help="brute-force isomorphism test")
    p_iso.add_argument("--a", required=True, help="first group spec")
    p_iso.add_argument("--b", required=True, help="second group spec")
    p_iso.set_defaults(func=_cmd_iso)

    p_self = sub.add_parser("selftest", help="run the acceptance criteria")
    p_self.add_argument("--p", type=int, default=None)
    p_self.add_argument("--max-order-exp", type=int, default=None)
    p_self.add_argument("--threads", type=int, default=threads_default)
    p_self.set_defaults(func=_cmd_selftest)

    p_rep = sub.add_parser("report", help="write class counts as CSV and a PNG chart")
    p_rep.add_argument("--p", type=int, required=True)
    p_rep.add_argument("--max-order-exp", type=int, required=True)
    p_rep.add_argument("--out-dir", default="report")
    p_rep.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError, OverflowError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
