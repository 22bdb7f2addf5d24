"""Command-line benchmark front end.

Three subcommands:

  sgko solve  --problem p1 --n 512 --solver downdating --out out.csv
  sgko invert --problem t1 --n 128 --out out.csv
  sgko sweep  --out out_prefix

Every flag can also be supplied through the environment with the prefix
SGKO_ (e.g. SGKO_SOLVER=extended, SGKO_OUT=run.csv); explicit flags win.
On failure the process exits nonzero after printing one machine-readable
JSON error line to stderr.
"""

import argparse
import json
import os
import sys

from .bench import (CSV_HEADER, INVERT_CSV_HEADER, SOLVERS, run_bench,
                    run_invert_bench, sweep_records, write_csv)
from .problems import PROBLEM_IDS, ProblemSpec

ENV_PREFIX = "SGKO_"


def _env_default(name, cast, fallback=None):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    return cast(raw)


def _add_spec_flags(parser, problems):
    parser.add_argument("--problem", choices=problems, required=False,
                        default=_env_default("problem", str))
    parser.add_argument("--n", type=int,
                        default=_env_default("n", int, 128))
    parser.add_argument("--a", type=float, default=_env_default("a", float))
    parser.add_argument("--b", type=float, default=_env_default("b", float))
    parser.add_argument("--eps", type=float,
                        default=_env_default("eps", float))
    parser.add_argument("--seed", type=int,
                        default=_env_default("seed", int, 0))
    parser.add_argument("--m", type=int, default=_env_default("m", int, 1))
    parser.add_argument("--repeats", type=int,
                        default=_env_default("repeats", int, 5))
    parser.add_argument("--out", default=_env_default("out", str))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sgko",
        description="Benchmarks for the structured Cauchy-like solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="time one solver on one problem")
    _add_spec_flags(p_solve, PROBLEM_IDS)
    p_solve.add_argument("--solver", choices=sorted(SOLVERS),
                         default=_env_default("solver", str, "downdating"))

    p_invert = sub.add_parser("invert",
                              help="invert a Trummer-like problem")
    _add_spec_flags(p_invert, ("t1", "t2"))

    p_sweep = sub.add_parser("sweep",
                             help="run the full desk-scale problem grid")
    p_sweep.add_argument("--repeats", type=int,
                         default=_env_default("repeats", int, 3))
    p_sweep.add_argument("--seed", type=int,
                         default=_env_default("seed", int, 0))
    p_sweep.add_argument("--out", default=_env_default("out", str))
    return parser


def _spec_from_args(args):
    if args.problem is None:
        raise ValueError("--problem is required (or set SGKO_PROBLEM)")
    return ProblemSpec(args.problem, n=args.n, a=args.a, b=args.b,
                       eps=args.eps, seed=args.seed, m=args.m)


def _emit(records, header, out):
    if out:
        write_csv(out, records, header)
    else:
        writer = __import__("csv").writer(sys.stdout)
        writer.writerow(header)
        for rec in records:
            writer.writerow(rec.row())


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "solve":
            rec = run_bench(_spec_from_args(args), args.solver, args.repeats)
            _emit([rec], CSV_HEADER, args.out)
            if rec.error:
                raise RuntimeError(rec.error)
        elif args.command == "invert":
            rec = run_invert_bench(_spec_from_args(args), args.repeats)
            _emit([rec], INVERT_CSV_HEADER, args.out)
            if rec.error:
                raise RuntimeError(rec.error)
        else:
            solve_rows, invert_rows = [], []
            for kind, rec in sweep_records(repeats=args.repeats,
                                           seed=args.seed):
                (solve_rows if kind == "solve" else invert_rows).append(rec)
            if args.out:
                write_csv(args.out + "_solve.csv", solve_rows, CSV_HEADER)
                write_csv(args.out + "_invert.csv", invert_rows,
                          INVERT_CSV_HEADER)
            else:
                _emit(solve_rows, CSV_HEADER, None)
                _emit(invert_rows, INVERT_CSV_HEADER, None)
            failed = [r for r in solve_rows + invert_rows if r.error]
            if failed:
                raise RuntimeError("; ".join(r.error for r in failed))
    except Exception as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
