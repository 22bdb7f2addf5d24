"""Solve one Cauchy-like system three ways and compare the cost profiles.

The matrix is never formed: all three solvers work on the generator
representation (G, B, t, s).  The classic solver keeps the full U factor
(quadratic storage); the extended-matrix and downdating solvers stay within
2n scratch slots.  All three agree with the dense oracle to roundoff.
"""

import numpy as np

from cauchykit import (CauchyLikeGenerators, dense_solve_oracle,
                       reconstruct_dense, solve_downdating, solve_extended,
                       solve_implicit_l)

rng = np.random.default_rng(0)
n, r = 400, 2

# separated real node grids keep the instance well conditioned
t = np.arange(n) + 0.5
s = np.arange(n).astype(float)
G = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
B = rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
gen = CauchyLikeGenerators(G, B, t, s)
b = rng.standard_normal(n) + 1j * rng.standard_normal(n)

x_ref = dense_solve_oracle(reconstruct_dense(gen), b)

print(f"n = {n}, displacement rank r = {r}")
print(f"{'solver':<12} {'rel err vs oracle':>18} {'flops/n^2':>10} "
      f"{'workspace':>10}")
for name, solver in (("classic", solve_implicit_l),
                     ("extended", solve_extended),
                     ("downdating", solve_downdating)):
    rep = solver(gen, b)
    err = np.linalg.norm(rep.x - x_ref) / np.linalg.norm(x_ref)
    print(f"{name:<12} {err:>18.3e} {rep.flops / n**2:>10.2f} "
          f"{rep.peak_workspace:>10}")

print("\nexpected leading flop coefficients for r=2, m=1:")
print("  classic    (4r+2m+1)   = 11")
print("  extended   (6r+2m+3/2) = 15.5")
print("  downdating (6r+2m+3/2) = 15.5")
print("workspace: classic holds U (n^2 + n slots); the O(n)-space variants "
      "use exactly 2n.")
