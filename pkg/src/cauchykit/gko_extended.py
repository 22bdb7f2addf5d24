"""O(n)-space Cauchy-like solver via the augmented-matrix Schur complement.

The solution of C x = b is the Schur complement of C in

    [[ C, b ],
     [ -I, 0 ]],

so n steps of Gaussian elimination on the augmented matrix yield x.  Rows
of the lower block are Cauchy-like with respect to the column nodes s, so
the whole elimination can be carried out on the generator pair: at step k
the storage rows 0..k-1 of G already hold the generator rows of the active
lower-block rows (the lower-block row activated at step k overwrites the
eliminated upper-block row in place, which is the rows-modulo-n reuse).
Pivoting acts on rows k..n-1 only, i.e. on the upper block.

Extra storage is the two scratch vectors l and u (2n complex slots);
leading flop cost is (6r + 2m + 3/2) n^2.
"""

import numpy as np

from .core import (NodeCollision, NonInjectiveNodes, OpCounter,
                   SingularMatrix, SolveReport, _has_repeats,
                   reconstruct_dense)


def _check_preconditions(gen):
    if _has_repeats(gen.s):
        raise NonInjectiveNodes("extended-matrix solver needs injective s")
    if not gen.is_fully_reconstructible():
        raise NodeCollision("solver requires t[i] != s[j] for all i, j")


def solve_extended(gen, b):
    """Solve C x = b in O(n) auxiliary space (extended-matrix variant)."""
    _check_preconditions(gen)
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
    counter.alloc(2 * n)  # l and u
    l = np.empty(n, dtype=np.complex128)
    u = np.empty(n, dtype=np.complex128)
    sigma = np.arange(n)
    pivots = np.empty(n, dtype=np.complex128)

    for k in range(n - 1):
        j = n - k - 1
        # rows 0..k-1 are lower-block rows: their row node is s, not t
        l[:k] = (G[:k] @ B[:, k]) / (s[:k] - s[k])
        l[k:] = (G[k:] @ B[:, k]) / (t[k:] - s[k])
        q = k + int(np.argmax(np.abs(l[k:])))
        p = l[q]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        if q != k:
            l[[k, q]] = l[[q, k]]
            x[[k, q]] = x[[q, k]]
            G[[k, q]] = G[[q, k]]
            t[[k, q]] = t[[q, k]]
            sigma[[k, q]] = sigma[[q, k]]
        pivots[k] = p
        u[k + 1:] = (G[k] @ B[:, k + 1:]) / (t[k] - s[k + 1:])
        x[k] /= p
        x[:k] -= np.outer(l[:k], x[k])
        x[k + 1:] -= np.outer(l[k + 1:], x[k])
        G[k] /= p
        G[:k] -= np.outer(l[:k], G[k])
        G[k + 1:] -= np.outer(l[k + 1:], G[k])
        B[:, k + 1:] -= np.outer(B[:, k] / p, u[k + 1:])
        counter.add((2 * r + 1) * (n + j)                # l and u
                    + 2 * m * (n - 1) + m                # x updates
                    + 2 * r * (n - 1) + r                # G updates
                    + 2 * r * j + r)                     # B update
    # final cleanup step k = n: every remaining lower-block row is updated
    l[:n - 1] = (G[:n - 1] @ B[:, n - 1]) / (s[:n - 1] - s[n - 1])
    p = (G[n - 1] @ B[:, n - 1]) / (t[n - 1] - s[n - 1])
    if p == 0:
        raise SingularMatrix(f"zero pivot at step {n - 1}")
    pivots[n - 1] = p
    x[n - 1] /= p
    x[:n - 1] -= np.outer(l[:n - 1], x[n - 1])
    counter.add((2 * r + 1) * n + 2 * m * (n - 1) + m)

    return SolveReport(x[:, 0] if squeeze else x, sigma,
                       counter.flops, counter.peak, pivots=pivots)


def extended_block_probe(gen, b, k):
    """Snapshot of the four augmented-matrix blocks after k elimination steps.

    Test-only instrumentation: runs k unpivoted Gaussian-elimination steps on
    the materialized 2n x (n+m) augmented matrix and returns the blocks
    (upper_left, upper_right, lower_left, lower_right).  Materializes O(n^2)
    state; the production solver never does.
    """
    n = gen.n
    C = reconstruct_dense(gen)
    b = np.asarray(b, dtype=np.complex128)
    if b.ndim == 1:
        b = b[:, None]
    m = b.shape[1]
    A = np.zeros((2 * n, n + m), dtype=np.complex128)
    A[:n, :n] = C
    A[:n, n:] = b
    A[n:, :n] = -np.eye(n)
    for step in range(k):
        p = A[step, step]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {step} (probe is unpivoted)")
        rows = np.concatenate([np.arange(step + 1, n),
                               np.arange(n, 2 * n)])
        A[rows, step:] -= np.outer(A[rows, step] / p, A[step, step:])
    return A[:n, :n], A[:n, n:], A[n:, :n], A[n:, n:]
