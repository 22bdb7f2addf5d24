"""Benchmark harness: timed solves/inversions over the named problem suite.

Records carry wall time (median over repeats on a monotonic clock, one
discarded warm-up), the forward error ||x - e|| / ||e||, the relative
residual ||A x - b|| / ||b||, the downdating a-posteriori indicator when
available, and the instrumented flop / peak-workspace counts.

CSV schemas:
  solve rows:  problem,n,solver,seconds,fwd_err,residual,apost_err,flops,workspace
  invert rows: problem,n,solver,seconds,E1,E2,E3,flops,workspace

where E1, E2, E3 are the relative errors of the inverse's diagonal,
generators (sum of the two factor errors) and full dense reconstruction
against the reference inverse (dense oracle for t1, closed form for t2).
"""

import csv
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .core import (cauchy_matvec, dense_inverse_oracle,
                   trummer_reconstruct_dense)
from .gko_dense import solve_implicit_l
from .gko_downdate import solve_downdating
from .gko_extended import solve_extended
from .problems import ProblemSpec, generate_problem
from .trummer import trummer_invert, trummer_matvec, trummer_solve

CSV_HEADER = ("problem", "n", "solver", "seconds", "fwd_err", "residual",
              "apost_err", "flops", "workspace")
INVERT_CSV_HEADER = ("problem", "n", "solver", "seconds", "E1", "E2", "E3",
                     "flops", "workspace")

SOLVERS = {
    "classic": solve_implicit_l,
    "extended": solve_extended,
    "downdating": solve_downdating,
}


@dataclass
class BenchRecord:
    problem: str
    n: int
    solver: str
    seconds: float
    fwd_err: float
    residual: float
    apost_err: float
    flops: int
    workspace: int
    error: str = None  # exception text for failed rows, not a CSV column

    def row(self):
        apost = "" if self.apost_err is None else repr(self.apost_err)
        return (self.problem, self.n, self.solver, repr(self.seconds),
                repr(self.fwd_err), repr(self.residual), apost,
                self.flops, self.workspace)


@dataclass
class InvertRecord:
    problem: str
    n: int
    solver: str
    seconds: float
    e1: float
    e2: float
    e3: float
    flops: int
    workspace: int
    error: str = None

    def row(self):
        return (self.problem, self.n, self.solver, repr(self.seconds),
                repr(self.e1), repr(self.e2), repr(self.e3),
                self.flops, self.workspace)


def _timed(fn, repeats):
    """Median wall time of fn over `repeats` runs after one warm-up."""
    fn()
    times = []
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, statistics.median(times)


def _solve_once(problem, solver):
    if problem.kind == "cauchy":
        return SOLVERS[solver](problem.operand, problem.b)
    if problem.kind == "toeplitz":
        bridge = problem.bridge
        report = SOLVERS[solver](bridge.gen, bridge.forward_rhs(problem.b))
        report.x = bridge.backward_solution(report.x)
        return report
    if problem.kind == "trummer":
        if solver != "downdating":
            raise ValueError(
                "Trummer-like problems are solved by the downdating variant")
        return trummer_solve(problem.operand, problem.b)
    raise ValueError(f"unknown problem kind {problem.kind!r}")


def _residual(problem, x):
    if problem.kind == "cauchy":
        r = cauchy_matvec(problem.operand, x) - problem.b
    elif problem.kind == "toeplitz":
        from .problems import _toeplitz_matvec
        r = _toeplitz_matvec(problem.operand, x) - problem.b
    else:
        r = trummer_matvec(problem.operand, x) - problem.b
    return float(np.linalg.norm(r) / np.linalg.norm(problem.b))


def run_bench(spec, solver, repeats=5):
    """Run one timed solve of `spec` with `solver`, returning a BenchRecord.

    Solver failures are captured as a record with NaN metrics and the
    exception text in `.error` rather than raised.
    """
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}")
    problem = generate_problem(spec)
    try:
        report, seconds = _timed(lambda: _solve_once(problem, solver),
                                 repeats)
    except Exception as exc:
        nan = float("nan")
        return BenchRecord(spec.id, spec.n, solver, nan, nan, nan, None,
                           0, 0, error=f"{type(exc).__name__}: {exc}")
    fwd = float(np.linalg.norm(report.x - problem.x_true)
                / np.linalg.norm(problem.x_true))
    return BenchRecord(spec.id, spec.n, solver, seconds, fwd,
                       _residual(problem, report.x),
                       report.aposteriori_b_error,
                       report.flops, report.peak_workspace)


def invert_errors(T, result, reference):
    """E1 (diagonal), E2 (generators), E3 (dense) of `result` vs `reference`."""
    inv = result.inv
    g_ref = reference @ T.G
    b_ref = -T.B @ reference
    e1 = np.linalg.norm(inv.d - np.diag(reference)) / np.linalg.norm(
        np.diag(reference))
    e2 = (np.linalg.norm(inv.G - g_ref) / np.linalg.norm(g_ref)
          + np.linalg.norm(inv.B - b_ref) / np.linalg.norm(b_ref))
    e3 = np.linalg.norm(trummer_reconstruct_dense(inv) - reference) \
        / np.linalg.norm(reference)
    return float(e1), float(e2), float(e3)


def run_invert_bench(spec, repeats=5):
    """Invert a Trummer-like problem and report E1, E2, E3."""
    if spec.id not in ("t1", "t2"):
        raise ValueError("invert benchmark expects a Trummer-like problem")
    problem = generate_problem(spec)
    T = problem.operand
    try:
        result, seconds = _timed(lambda: trummer_invert(T), repeats)
    except Exception as exc:
        nan = float("nan")
        return InvertRecord(spec.id, spec.n, "invert", nan, nan, nan, nan,
                            0, 0, error=f"{type(exc).__name__}: {exc}")
    if problem.reference_inverse is not None:
        reference = problem.reference_inverse()
    else:
        reference = dense_inverse_oracle(trummer_reconstruct_dense(T))
    e1, e2, e3 = invert_errors(T, result, reference)
    return InvertRecord(spec.id, spec.n, "invert", seconds, e1, e2, e3,
                        result.report.flops, result.report.peak_workspace)


def sweep_records(repeats=3, seed=0):
    """The full desk-scale benchmark grid, yielding (header_kind, record)."""
    for pid in ("p1", "p2"):
        for n in (128, 256, 512, 1024):
            for solver in SOLVERS:
                yield "solve", run_bench(ProblemSpec(pid, n=n), solver,
                                         repeats)
    for a in (0.85, 0.90):
        for solver in SOLVERS:
            yield "solve", run_bench(ProblemSpec("p3", n=512, a=a), solver,
                                     repeats)
    for solver in SOLVERS:
        yield "solve", run_bench(ProblemSpec("p4", n=128, seed=seed), solver,
                                 repeats)
    for n in (128, 512):
        yield "invert", run_invert_bench(ProblemSpec("t1", n=n), repeats)
    for eps in (1e-3, 1e-6, 1e-9):
        yield "invert", run_invert_bench(ProblemSpec("t2", n=512, eps=eps),
                                         repeats)


def write_csv(path, records, header):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for rec in records:
            writer.writerow(rec.row())
