#!/usr/bin/env python
"""
Command line front end.

Usage:
  python run.py laws DESCRIPTOR [--seed N] [--cases N] [--record] [--csv PATH] [--xlsx PATH]
  python run.py monad DESCRIPTOR ...          algebra + coefficient-change suites
  python run.py lawvere DESCRIPTOR ...        lawvere + roundtrip suites
  python run.py suite NAME DESCRIPTOR ...
  python run.py eval DESCRIPTOR --combination '[[<element>, "1/2"], ...]'
  python run.py friction --cells N [--lp]
  python run.py fidelity --psi1 a+bi,c+di --psi2 a+bi,c+di [--grid N]
  python run.py schur-horn --diag a,b,c --eig l1,l2,l3
                                             write --diag=-1/2,... when a value starts with "-"
  python run.py history [--limit N]

DESCRIPTOR is a path to a JSON descriptor file or inline JSON.
Exit codes: 0 pass, 1 law failure or negative answer, 2 usage/descriptor/validation error.
"""
# ========================================================
# IMPORTS
# ========================================================
import argparse
import json
import logging
import math
import sys

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from config import APP_NAME, DEFAULT_CASES, DEFAULT_SEED, VERSION
from cst.kernel import ConvexSpaceError
from cst.suites import SUITE_NAMES, SuiteResult, run_suite

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.cli")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

COMPOSITE_SUITES = {
    "laws": ("laws",),
    "monad": ("algebra", "coefficient-change"),
    "lawvere": ("lawvere", "roundtrip"),
}


# ========================================================
# PARSER
# ========================================================
def _suite_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("descriptor", help="descriptor file or inline JSON")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"random seed (default {DEFAULT_SEED}, env CST_SEED)")
    p.add_argument("--cases", type=int, default=DEFAULT_CASES,
                   help=f"random cases per suite (default {DEFAULT_CASES}, env CST_CASES)")
    p.add_argument("--record", action="store_true", help="store the run in the suite-run ledger")
    p.add_argument("--csv", metavar="PATH", help="also write a CSV report")
    p.add_argument("--xlsx", metavar="PATH", help="also write an XLSX report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=APP_NAME, description="Exact convex-space toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("laws", "convex space laws"),
                            ("monad", "Giry algebra laws and coefficient change"),
                            ("lawvere", "Lawvere functoriality and correspondence round trip")):
        _suite_options(sub.add_parser(name, help=help_text))

    p = sub.add_parser("suite", help="run one named suite")
    p.add_argument("name", choices=SUITE_NAMES)
    _suite_options(p)

    p = sub.add_parser("eval", help="evaluate a formal convex combination")
    p.add_argument("descriptor")
    p.add_argument("--combination", required=True,
                   help='JSON list of [element, "p/q"] pairs')

    p = sub.add_parser("friction", help="static friction force maximization")
    p.add_argument("--cells", type=int, default=10_000)
    p.add_argument("--lp", action="store_true", help="cross-check with scipy's HiGHS solver")

    p = sub.add_parser("fidelity", help="qubit fidelity defect, direct and by functional search")
    p.add_argument("--psi1", required=True)
    p.add_argument("--psi2", required=True)
    p.add_argument("--grid", type=int, default=100)

    p = sub.add_parser("schur-horn", help="diagonal inside the eigenvalue permutohedron?")
    p.add_argument("--diag", required=True,
                   help="comma-separated rationals; write --diag=-1/2,... for a leading minus")
    p.add_argument("--eig", required=True)

    p = sub.add_parser("history", help="list recorded suite runs")
    p.add_argument("--limit", type=int, default=20)
    return parser


# ========================================================
# COMMANDS
# ========================================================
def _export(results: list[SuiteResult], args) -> None:
    if args.csv or args.xlsx:
        from cst.reports import export_csv_report, export_xlsx_report
        if args.csv:
            export_csv_report(results, args.csv)
        if args.xlsx:
            export_xlsx_report(results, args.xlsx)


def _record(results: list[SuiteResult], space) -> None:
    from cst.db import SessionLocal, record_suite_run
    db = SessionLocal()
    try:
        for result in results:
            record_suite_run(db, result, space)
    finally:
        SessionLocal.remove()


def cmd_suites(args) -> int:
    from cst.descriptor import load_space_descriptor
    space = load_space_descriptor(args.descriptor)
    names = (args.name,) if args.command == "suite" else COMPOSITE_SUITES[args.command]
    results = [run_suite(name, space, args.seed, args.cases) for name in names]
    for result in results:
        sys.stdout.write(result.report_text())
    if args.record:
        _record(results, space)
    _export(results, args)
    return max(r.exit_status for r in results)


def cmd_eval(args) -> int:
    from cst.descriptor import load_space_descriptor
    from cst.giry import barycenter, dist_make
    space = load_space_descriptor(args.descriptor)
    if space.decode is None:
        raise ConvexSpaceError(f"{space.space_id} cannot decode elements")
    try:
        pairs = json.loads(args.combination)
    except json.JSONDecodeError as e:
        raise ConvexSpaceError(f"--combination: {e.msg} at column {e.colno}") from e
    if not isinstance(pairs, list) or not all(isinstance(p, list) and len(p) == 2 for p in pairs):
        raise ConvexSpaceError("--combination: expected a list of [element, weight] pairs")
    d = dist_make((space.decode(element), weight) for element, weight in pairs)
    print(json.dumps(space.encode(barycenter(space, d)), ensure_ascii=False))
    return EXIT_OK


def cmd_friction(args) -> int:
    from cst.apps import friction_solve, friction_solve_lp
    solution = friction_solve(args.cells)
    print(f"cells={solution.cells} F={solution.max_force:.12f} s={solution.switch_point:.12f} "
          f"torque={solution.torque:.3e}")
    print(f"reference F={math.sqrt(2) - 1:.12f} s={1 / math.sqrt(2):.12f}")
    if args.lp:
        lp = friction_solve_lp(args.cells)
        print(f"highs F={lp.max_force:.12f} s={lp.switch_point:.12f}")
    return EXIT_OK


def cmd_fidelity(args) -> int:
    from cst.apps import QubitPair, fidelity_defect, fidelity_defect_search, parse_qubit
    q = QubitPair(parse_qubit(args.psi1), parse_qubit(args.psi2))
    print(f"direct={fidelity_defect(q):.9f} search={fidelity_defect_search(q, args.grid):.9f}")
    return EXIT_OK


def cmd_schur_horn(args) -> int:
    from cst.geometric import SpectrumSpec, majorizes, permutohedron_contains
    spec = SpectrumSpec(tuple(v.strip() for v in args.eig.split(",")),
                        tuple(v.strip() for v in args.diag.split(",")))
    inside = permutohedron_contains(spec)
    print(f"{'inside' if inside else 'outside'} majorized={str(majorizes(spec.diagonal, spec.eigenvalues)).lower()}")
    return EXIT_OK if inside else EXIT_FAIL


def cmd_history(args) -> int:
    from cst.db import SessionLocal, recent_runs
    db = SessionLocal()
    try:
        for run in recent_runs(db, args.limit):
            print(f"{run.created_at:%Y-%m-%d %H:%M:%S} {run.suite} {run.space_id} "
                  f"seed={run.seed} cases={run.cases} checks={run.checked} "
                  f"failures={run.failure_count} exit={run.exit_status}")
    finally:
        SessionLocal.remove()
    return EXIT_OK


COMMANDS = {
    "laws": cmd_suites,
    "monad": cmd_suites,
    "lawvere": cmd_suites,
    "suite": cmd_suites,
    "eval": cmd_eval,
    "friction": cmd_friction,
    "fidelity": cmd_fidelity,
    "schur-horn": cmd_schur_horn,
    "history": cmd_history,
}


# ========================================================
# MAIN
# ========================================================
def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConvexSpaceError, ValueError) as e:
        _log.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
