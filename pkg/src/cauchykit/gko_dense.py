"""Reference O(n^2)-space fast solvers for Cauchy-like systems.

`lu_factor` runs generator-updating Gaussian elimination without pivoting
and materializes both triangular factors in one shared n x n array.
`solve_implicit_l` adds partial pivoting and never forms L: the columns of
L are applied to the right-hand side on the fly, but the full U factor is
still kept for the back-substitution, which is what makes this variant
quadratic in storage.
"""

import warnings

import numpy as np

from .core import (CauchyLikeGenerators, NodeCollision, OpCounter,
                   SingularMatrix, SolveReport)


NEAR_ZERO_PIVOT_FACTOR = 100.0  # times machine epsilon times column norm


class LUFactors:
    """Unit-lower L (strictly below the diagonal) and U in shared storage."""

    def __init__(self, LU, sigma=None):
        self.LU = LU
        n = LU.shape[0]
        self.sigma = np.arange(n) if sigma is None else sigma

    @property
    def L(self):
        return np.tril(self.LU, -1) + np.eye(self.LU.shape[0])

    @property
    def U(self):
        return np.triu(self.LU)


def _require_fully_reconstructible(gen):
    if not gen.is_fully_reconstructible():
        raise NodeCollision("solver requires t[i] != s[j] for all i, j")


def lu_factor(gen):
    """LU factorization of the represented matrix, no pivoting.

    Fails with SingularMatrix when a leading pivot is exactly zero (the
    factorization without pivoting needs all leading minors nonsingular).
    """
    _require_fully_reconstructible(gen)
    n, r = gen.n, gen.r
    G = gen.G.copy()
    B = gen.B.copy()
    t, s = gen.t, gen.s

    counter = OpCounter()
    counter.alloc(n * n)  # shared L/U storage
    LU = np.zeros((n, n), dtype=np.complex128)

    for k in range(n - 1):
        j = n - k - 1
        LU[k, k:] = (G[k] @ B[:, k:]) / (t[k] - s[k:])
        p = LU[k, k]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        LU[k + 1:, k] = (G[k + 1:] @ B[:, k]) / ((t[k + 1:] - s[k]) * p)
        G[k + 1:] -= np.outer(LU[k + 1:, k], G[k])
        B[:, k + 1:] -= np.outer(B[:, k] / p, LU[k, k + 1:])
        counter.add((2 * r + 1) * (2 * j + 1) + j          # rows/cols of L, U
                    + 2 * r * j + r                        # G update
                    + 2 * r * j + r)                       # B update
    LU[n - 1, n - 1] = (G[n - 1] @ B[:, n - 1]) / (t[n - 1] - s[n - 1])
    counter.add(2 * r + 1)
    if LU[n - 1, n - 1] == 0:
        raise SingularMatrix(f"zero pivot at step {n - 1}")
    factors = LUFactors(LU)
    factors.flops = counter.flops
    factors.peak_workspace = counter.peak
    return factors


def solve_implicit_l(gen, b, near_zero_factor=NEAR_ZERO_PIVOT_FACTOR):
    """Solve C x = b with partial pivoting and implicit L (classic GKO).

    Leading flop cost is (4r + 2m + 1) n^2 for an n x m right-hand side;
    workspace is dominated by the n x n array holding U.
    """
    _require_fully_reconstructible(gen)
    n, r = gen.n, gen.r
    G = gen.G.copy()
    B = gen.B.copy()
    t = gen.t.copy()
    s = gen.s
    x = np.asarray(b, dtype=np.complex128).copy()
    squeeze = x.ndim == 1
    if squeeze:
        x = x[:, None]
    if x.shape[0] != n:
        raise ValueError("right-hand side has wrong number of rows")
    m = x.shape[1]

    counter = OpCounter()
    counter.alloc(n * n + n)  # U plus the l column vector
    U = np.zeros((n, n), dtype=np.complex128)
    sigma = np.arange(n)
    near_zero = []
    eps = np.finfo(float).eps

    for k in range(n - 1):
        j = n - k - 1
        l = (G[k:] @ B[:, k]) / (t[k:] - s[k])
        q = k + int(np.argmax(np.abs(l)))
        p = l[q - k]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        if abs(p) < near_zero_factor * eps * np.linalg.norm(l):
            near_zero.append(k)
        if q != k:
            l[[0, q - k]] = l[[q - k, 0]]
            x[[k, q]] = x[[q, k]]
            G[[k, q]] = G[[q, k]]
            t[[k, q]] = t[[q, k]]
            sigma[[k, q]] = sigma[[q, k]]
        U[k, k] = p
        U[k, k + 1:] = (G[k] @ B[:, k + 1:]) / (t[k] - s[k + 1:])
        x[k + 1:] -= np.outer(l[1:], x[k] / p)
        G[k + 1:] -= np.outer(l[1:], G[k] / p)
        B[:, k + 1:] -= np.outer(B[:, k] / p, U[k, k + 1:])
        counter.add((2 * r + 1) * (2 * j + 1)
                    + 2 * m * j + m
                    + 2 * r * j + r
                    + 2 * r * j + r)
    U[n - 1, n - 1] = (G[n - 1] @ B[:, n - 1]) / (t[n - 1] - s[n - 1])
    counter.add(2 * r + 1)
    if U[n - 1, n - 1] == 0:
        raise SingularMatrix(f"zero pivot at step {n - 1}")

    x[n - 1] /= U[n - 1, n - 1]
    counter.add(m)
    for k in range(n - 2, -1, -1):
        x[k] -= U[k, k + 1:] @ x[k + 1:]
        x[k] /= U[k, k]
        counter.add(2 * m * (n - k - 1) + m)

    if near_zero:
        warnings.warn(f"near-zero pivots at steps {near_zero}", RuntimeWarning)
    return SolveReport(x[:, 0] if squeeze else x, sigma,
                       counter.flops, counter.peak,
                       pivots=np.diag(U).copy(),
                       near_zero_pivot_steps=near_zero)
