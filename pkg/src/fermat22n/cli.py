"""Command line interface.

Subcommands: check (one pair), survey (range of pairs), solve (one
obstruction equation), frey (inspect the curve of an adapted solution),
mordell (curve families and bounded point search).  Exit codes: 0 success,
1 input error, 2 internal invariant violation.  All numeric output is
exact.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import __version__
from .curvedb import load_db
from .diophantine import (
    lookup_solve,
    mordell_family,
    point_to_solution,
    s_point_search,
    solve_main,
    solve_qpow,
    solve_rn,
)
from .frey import (
    FreyInstance,
    build_frey,
    frey_conductor,
    frey_discriminant,
    frey_two_structure_report,
)
from .pipeline import PairTask, SurveyReport, SurveyRow, check_pair, render_report, survey

DB_ENV_VAR = "FERMAT22N_DB"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; input errors are 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fermat22n", description=__doc__)
    parser.add_argument("--version", action="version", version=f"fermat22n {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_box(p):
        p.add_argument("--m-max", type=int, default=200)
        p.add_argument("--gamma-max", type=int, default=200)

    p_check = sub.add_parser("check", help="check the criteria for one pair (C, q, parity)")
    p_check.add_argument("--C", type=int, required=True)
    p_check.add_argument("--q", type=int, required=True)
    p_check.add_argument("--parity", choices=("even", "odd"), required=True)
    add_box(p_check)
    p_check.add_argument("--db", default=None, help="curve table for a lookup cross-check "
                         f"(default: ${DB_ENV_VAR})")
    p_check.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p_check.add_argument("--diagnostics", action="store_true")

    p_survey = sub.add_parser("survey", help="check every admissible pair in a range")
    p_survey.add_argument("--c-max", type=int, default=70)
    p_survey.add_argument("--q-max", type=int, default=97)
    p_survey.add_argument("--parity", choices=("even", "odd", "both"), default="both")
    add_box(p_survey)
    p_survey.add_argument("--format", choices=("json", "csv", "table"), default="table")

    p_solve = sub.add_parser("solve", help="solve one obstruction equation inside the box")
    p_solve.add_argument("--equation", choices=("main", "rn", "qpow"), required=True)
    p_solve.add_argument("--C", type=int, required=True)
    p_solve.add_argument("--q", type=int, required=True)
    p_solve.add_argument("--parity", choices=("even", "odd"), default="even",
                         help="gamma parity (main equation only)")
    add_box(p_solve)
    p_solve.add_argument("--include-off-parity", action="store_true",
                         help="qpow only: also report off-parity solutions")

    p_frey = sub.add_parser("frey", help="inspect the Frey curve of C t^2 + q^gamma = 2^m")
    p_frey.add_argument("--C", type=int, required=True)
    p_frey.add_argument("--t", type=int, required=True)
    p_frey.add_argument("--m", type=int, required=True)
    p_frey.add_argument("--q", type=int, default=3,
                        help="odd prime q (irrelevant when gamma = 0)")
    p_frey.add_argument("--gamma", type=int, default=0)

    p_mordell = sub.add_parser("mordell", help="list a Mordell family, optionally search points")
    p_mordell.add_argument("--C", type=int, required=True)
    p_mordell.add_argument("--q", type=int, required=True)
    p_mordell.add_argument("--family", choices=("E", "F"), required=True)
    p_mordell.add_argument("--height-bound", type=int, default=None)

    return parser


def _single_row_report(task: PairTask, verdict) -> SurveyReport:
    row = SurveyRow(task.C, task.q, task.parity, verdict)
    return SurveyReport(task.C, task.q, task.m_max, task.gamma_max, (row,))


def _cmd_check(args) -> int:
    task = PairTask(args.C, args.q, args.parity, args.m_max, args.gamma_max)
    verdict = check_pair(task, diagnostics=args.diagnostics)
    db_path = args.db or os.environ.get(DB_ENV_VAR)
    if db_path:
        result = lookup_solve(args.C, args.q, args.parity, load_db(db_path))
        extra = (
            "table lookup: "
            + (", ".join(str(s.triple()) for s in result.solutions) or "no matches")
            + ("" if result.complete else " (coverage incomplete)")
        )
        verdict = dataclasses.replace(verdict, notes=verdict.notes + (extra,))
    sys.stdout.write(render_report(_single_row_report(task, verdict), args.format))
    return 0


def _cmd_survey(args) -> int:
    parities = ("even", "odd") if args.parity == "both" else (args.parity,)
    report = survey(args.c_max, args.q_max, args.m_max, args.gamma_max, parities)
    sys.stdout.write(render_report(report, args.format))
    return 0


def _cmd_solve(args) -> int:
    if args.equation == "main":
        sols = solve_main(args.C, args.q, args.parity, args.m_max, args.gamma_max)
    elif args.equation == "rn":
        sols = solve_rn(args.C, args.q, args.m_max, args.gamma_max)
    else:
        sols = solve_qpow(args.C, args.q, args.m_max, args.gamma_max,
                          include_off_parity=args.include_off_parity)
    payload = {
        "equation": args.equation,
        "C": args.C,
        "q": args.q,
        "box": [args.m_max, args.gamma_max],
        "solutions": [
            {"t": s.t, "gamma": s.gamma, "m": s.m, "meets_threshold": s.meets_threshold}
            for s in sols
        ],
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_frey(args) -> int:
    inst = FreyInstance.adapted(args.C, args.q, args.gamma, args.t, args.m)
    fc = build_frey(inst)
    report = frey_two_structure_report(inst)
    payload = {
        "instance": {"C": inst.C, "q": inst.q, "gamma": inst.k, "x": inst.x, "zp": inst.zp},
        "curve": dict(zip(("a1", "a2", "a3", "a4", "a6"), fc.curve.a_invariants())),
        "invariants": {"c4": fc.invariants.c4, "c6": fc.invariants.c6, "disc": fc.invariants.disc},
        "minimal_discriminant": frey_discriminant(inst),
        "conductor": frey_conductor(inst),
        "two_structure": {
            "aux": report.aux,
            "single_two_torsion": report.single_two_torsion,
            "no_order4_certificate": report.no_order4_certificate,
        },
    }
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_mordell(args) -> int:
    curves = mordell_family(args.C, args.q, args.family)
    out = []
    for curve in curves:
        entry = {
            "family": curve.family,
            "b": curve.b_index,
            "d": curve.d_index,
            "coefficient": curve.coefficient,
            "denominator_prime": curve.allowed_denominator_prime,
        }
        if args.height_bound:
            found = s_point_search(curve, args.height_bound)
            entry["points"] = [
                {
                    "u": f"{p.u_num}/{p.u_den}" if p.u_den != 1 else str(p.u_num),
                    "v": f"{p.v_num}/{p.v_den}" if p.v_den != 1 else str(p.v_num),
                    "lifts_to": (
                        s.triple()
                        if (s := point_to_solution(p, curve, args.C, args.q)) is not None
                        else None
                    ),
                }
                for p in found.points
            ]
            entry["search"] = {
                "height_bound": found.height_bound,
                "denominator_exponent_cap": found.denominator_exponent_cap,
                "bounded": found.bounded,
            }
        out.append(entry)
    json.dump({"C": args.C, "q": args.q, "curves": out}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


_DISPATCH = {
    "check": _cmd_check,
    "survey": _cmd_survey,
    "solve": _cmd_solve,
    "frey": _cmd_frey,
    "mordell": _cmd_mordell,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code or 0
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AssertionError, RuntimeError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
