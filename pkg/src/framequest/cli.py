"""Command-line analysis of collected response records.

Subcommands: report, simulate, allais, validate-bank. Exit codes: 0 success,
1 I/O error (missing or corrupt store), 2 validation failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .analysis import AgentPolicy, AnalysisError, render_allais_demo, render_report, simulate
from .bank import bank_checksum, validate_bank
from .store import PersistenceError, RecordStore

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="analyze", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="analyze the records in a store file")
    p_report.add_argument("--store", required=True, help="path to the record store file")
    p_report.add_argument("--format", choices=("markdown", "structured"), default="markdown")

    p_sim = sub.add_parser("simulate", help="generate a synthetic cohort into a store file")
    p_sim.add_argument("--n", type=int, required=True, help="sessions per version")
    p_sim.add_argument("--p-pos", type=float, required=True, help="P(risky) under positive framing")
    p_sim.add_argument("--p-neg", type=float, required=True, help="P(risky) under negative framing")
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--out", required=True, help="store file to append the records to")

    sub.add_parser("allais", help="print the four-lottery demonstration")
    sub.add_parser("validate-bank", help="check the question bank's expected values")
    return parser


def _cmd_report(args: argparse.Namespace) -> int:
    if not os.path.exists(args.store):
        print(f"error: store {args.store} does not exist", file=sys.stderr)
        return EXIT_IO
    try:
        store = RecordStore.open(args.store)
        records = store.load()
    except PersistenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    v1 = [r for r in records if r.version == 1]
    v2 = [r for r in records if r.version == 2]
    sys.stdout.write(render_report(v1, v2, format=args.format))
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    try:
        policy = AgentPolicy(p_risky_positive=args.p_pos, p_risky_negative=args.p_neg, seed=args.seed)
        if args.n < 1:
            raise AnalysisError("--n must be >= 1")
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    v1, v2 = simulate(args.n, policy)
    try:
        store = RecordStore.open(args.out)
        for record in v1 + v2:
            store.append(record)
    except PersistenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(v1)} V1 + {len(v2)} V2 records to {args.out} (seed {args.seed})")
    return EXIT_OK


def _cmd_allais() -> int:
    sys.stdout.write(render_allais_demo())
    return EXIT_OK


def _cmd_validate_bank() -> int:
    ok = True
    for check in validate_bank():
        if check.quantified:
            status = "EV equal" if check.ev_equal else "EV MISMATCH"
            ok = ok and bool(check.ev_equal)
        else:
            status = "not quantified (no EV claim)"
        print(f"question {check.id}: {status}")
    print(f"bank checksum: {bank_checksum()}")
    if not ok:
        print("error: a quantified question has unequal expected values", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "report":
        return _cmd_report(args)
    if args.command == "simulate":
        return _cmd_simulate(args)
    if args.command == "allais":
        return _cmd_allais()
    return _cmd_validate_bank()


if __name__ == "__main__":
    sys.exit(main())
