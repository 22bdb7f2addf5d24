"""Run a compact version of the named benchmark suite and print the rows.

Problems:
  p1  well-conditioned Cauchy-like matrix (real nodes, constant generators)
  p2  the same family with b = -0.3, severely ill conditioned
  p3  Gaussian Toeplitz T[i,j] = a**(i-j)**2, solved through the FFT bridge
      (a stress case: generator growth limits accuracy for a close to 1)
  p4  generator-growth stress case (nearly parallel generator columns)
  t1  well-conditioned Trummer-like matrix, inversion benchmark
  t2  diagonal-plus-rank-one with a closed-form inverse, condition ~ 1/eps

The same grid (at full size) is exposed by the command line tool:
  sgko sweep --out results
"""

from cauchykit import ProblemSpec, run_bench, run_invert_bench
from cauchykit.bench import SOLVERS

print(f"{'problem':<8}{'n':>6}{'solver':<12}{'fwd_err':>12}{'residual':>12}"
      f"{'flops/n^2':>11}{'wspace':>8}")
for pid, n in (("p1", 256), ("p2", 128), ("p3", 256), ("p4", 128)):
    for solver in SOLVERS:
        rec = run_bench(ProblemSpec(pid, n=n), solver, repeats=1)
        print(f"{rec.problem:<8}{rec.n:>6}  {rec.solver:<10}"
              f"{rec.fwd_err:>12.2e}{rec.residual:>12.2e}"
              f"{rec.flops / rec.n**2:>11.2f}{rec.workspace:>8}")

print(f"\n{'problem':<8}{'n':>6}{'E1':>12}{'E2':>12}{'E3':>12}")
for spec in (ProblemSpec("t1", n=256),
             ProblemSpec("t2", n=256, eps=1e-3),
             ProblemSpec("t2", n=256, eps=1e-6)):
    rec = run_invert_bench(spec, repeats=1)
    label = spec.id if spec.id == "t1" else f"{spec.id}@{spec.eps:.0e}"
    print(f"{label:<8}{rec.n:>6}{rec.e1:>12.2e}{rec.e2:>12.2e}"
          f"{rec.e3:>12.2e}")
