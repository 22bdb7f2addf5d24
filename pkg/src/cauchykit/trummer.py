"""Structured operations on Trummer-like matrices.

A Trummer-like matrix T (shared injective nodes s, explicit diagonal d)
supports matvec, sum and product directly on the generator representation.
The displacement map D(M) = diag(s) M - M diag(s) behaves like a derivative:

    D(A + B) = D(A) + D(B)
    D(A B)   = D(A) B + A D(B)
    D(A^-1)  = -A^-1 D(A) A^-1

so sums, products and inverses stay low displacement rank.

`trummer_solve` is the downdating solver adapted to the non-reconstructible
diagonal: during pivoting the two special entries move off-diagonal, the
row being built picks the stored value d[q] for the one it hits, and the
diagonal of the Schur complement is carried along with the usual Gaussian
update d[l] -= L[l,k] U[k,l].

`trummer_invert` computes a full representation of T^-1 in one sweep of the
extended-matrix algorithm.  The generator updates applied to G and B are
exactly the transformations that solve T X = G and Y T = B, so the final G
and B (columns un-permuted) are T^-1 G and B T^-1.  The diagonal of the
inverse is accumulated from

    (T^-1)[i, i] = sum_k U^-1[i, k] * (L^-1 P^-1)[k, i],

whose k-th summand is available at step k: the lower-block values of l hold
-U^-1[:, k] * p and, by the transposed run on T^T (whose elimination state
is the transpose of T's up to the pivot scaling), the lower-block values of
u hold -(L^-1 P^-1)[k, :] routed through the permutation.  The vector d is
reused in place: position k stops holding a Schur diagonal exactly when the
accumulation of (T^-1)[k, k] begins.
"""

import numpy as np

from .core import (NodeMismatch, NonInjectiveNodes, OpCounter, SingularMatrix,
                   SolveReport, TrummerMatrix, trummer_col, trummer_row)

GAP_TOLERANCE = 1e-12  # node-gap threshold for flagging a diagonal refresh


def trummer_matvec(T, v):
    """T @ v, reconstructing one row at a time (O(n) extra storage)."""
    v = np.asarray(v, dtype=np.complex128)
    n = T.n
    out = np.empty((n,) + v.shape[1:], dtype=np.complex128)
    for i in range(n):
        out[i] = trummer_row(T, i) @ v
    return out


def _check_same_nodes(S, T):
    if S.n != T.n or not np.array_equal(S.s, T.s):
        raise NodeMismatch("operands must share the same node vector")


def trummer_add(S, T):
    """S + T: concatenated generators, summed diagonals."""
    _check_same_nodes(S, T)
    return TrummerMatrix(np.hstack([S.G, T.G]),
                         np.vstack([S.B, T.B]),
                         S.s, S.d + T.d)


def trummer_mul(T, S):
    """T @ S: generators [T G_S | G_T], [B_S ; B_T S]; diagonal by dot products."""
    _check_same_nodes(T, S)
    n = T.n
    TGs = trummer_matvec(T, S.G)
    BtS = np.empty_like(T.B)
    for j in range(n):
        BtS[:, j] = T.B @ trummer_col(S, j)
    d = np.empty(n, dtype=np.complex128)
    for i in range(n):
        d[i] = trummer_row(T, i) @ trummer_col(S, i)
    return TrummerMatrix(np.hstack([TGs, T.G]),
                         np.vstack([S.B, BtS]),
                         T.s, d)


def _transpose(T):
    """Transpose of a Trummer-like matrix in generator form."""
    return TrummerMatrix(T.B.T, -T.G.T, T.s, T.d)


class TrummerInverseResult:
    """Representation of T^-1 plus optional simultaneous system solutions."""

    def __init__(self, inv, x, y, report):
        self.inv = inv
        self.x = x
        self.y = y
        self.report = report


def trummer_solve(T, b, gap_tolerance=GAP_TOLERANCE):
    """Solve T x = b with the downdating algorithm, O(n) extra storage."""
    n, r = T.n, T.r
    G = T.G.copy()
    B = T.B.copy()
    s = T.s
    d = T.d.copy()
    x = np.asarray(b, dtype=np.complex128).copy()
    squeeze = x.ndim == 1
    if squeeze:
        x = x[:, None]
    if x.shape[0] != n:
        raise ValueError("right-hand side has wrong number of rows")
    m = x.shape[1]

    counter = OpCounter()
    counter.alloc(2 * n)  # l and u (d is a working copy of an input)
    l = np.empty(n, dtype=np.complex128)
    u = np.empty(n, dtype=np.complex128)
    sigma = np.arange(n)
    flagged = []

    for k in range(n - 1):
        j = n - k - 1
        l[k] = d[k]
        l[k + 1:] = (G[k + 1:] @ B[:, k]) / (s[sigma[k + 1:]] - s[k])
        q = k + int(np.argmax(np.abs(l[k:])))
        p = l[q]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        if q != k:
            l[[k, q]] = l[[q, k]]
            x[[k, q]] = x[[q, k]]
            G[[k, q]] = G[[q, k]]
            sigma[[k, q]] = sigma[[q, k]]
        u[k] = p
        denom = s[sigma[k]] - s[k + 1:]
        if q != k:
            # the swapped-in row meets its own node at column q; that entry
            # is the tracked diagonal value, not a reconstructible one
            denom[q - k - 1] = 1.0
        u[k + 1:] = (G[k] @ B[:, k + 1:]) / denom
        if q != k:
            u[q] = d[q]
        x[k + 1:] -= np.outer(l[k + 1:], x[k] / p)
        G[k + 1:] -= np.outer(l[k + 1:], G[k] / p)
        B[:, k + 1:] -= np.outer(B[:, k] / p, u[k + 1:])
        d[k + 1:] -= l[k + 1:] * u[k + 1:] / p
        if q != k:
            gap = s[sigma[q]] - s[q]
            if abs(gap) < gap_tolerance:
                flagged.append(k)
            d[q] = (G[q] @ B[:, q]) / gap
        counter.add((2 * r + 1) * 2 * j
                    + 2 * m * j + m
                    + 2 * r * j + r
                    + 2 * r * j + r
                    + 3 * j)
    u[n - 1] = d[n - 1]
    if u[n - 1] == 0:
        raise SingularMatrix(f"zero pivot at step {n - 1}")
    x[n - 1] /= u[n - 1]
    counter.add(m)

    for k in range(n - 2, -1, -1):
        j = n - k - 1
        u[k + 1:] = (G[k] @ B[:, k + 1:]) / (s[k] - s[k + 1:])
        B[:, k + 1:] += np.outer(B[:, k] / u[k], u[k + 1:])
        x[k] -= u[k + 1:] @ x[k + 1:]
        x[k] /= u[k]
        counter.add((2 * r + 1) * j + 2 * r * j + r + 2 * m * j + m)

    return SolveReport(x[:, 0] if squeeze else x, sigma,
                       counter.flops, counter.peak,
                       pivots=None,
                       refreshed_diag_flags=flagged)


def trummer_invert(T, b=None, c=None, gap_tolerance=GAP_TOLERANCE):
    """Invert T, returning generators of T^-1, diag(T^-1), and optionally
    the solutions of T x = b and y T = c computed in the same sweep.

    Leading flop cost is (8r + 2*m1 + 2*m2 + 5) n^2.
    """
    n, r = T.n, T.r
    G = T.G.copy()
    B = T.B.copy()
    s = T.s
    d = T.d.copy()
    x = (np.zeros((n, 0), dtype=np.complex128) if b is None
         else np.asarray(b, dtype=np.complex128).reshape(n, -1).copy())
    y = (np.zeros((0, n), dtype=np.complex128) if c is None
         else np.asarray(c, dtype=np.complex128).reshape(-1, n).copy())
    m1 = x.shape[1]
    m2 = y.shape[0]

    counter = OpCounter()
    counter.alloc(2 * n)  # l and u; d is reused as the diagonal accumulator
    l = np.empty(n, dtype=np.complex128)
    u = np.empty(n, dtype=np.complex128)
    sigma = np.arange(n)
    flagged = []

    for k in range(n):
        last = k == n - 1
        j = n - k - 1
        # column k of the augmented matrix: lower-block rows first
        l[:k] = (G[:k] @ B[:, k]) / (s[:k] - s[k])
        if not last:
            l[k] = d[k]
            l[k + 1:] = (G[k + 1:] @ B[:, k]) / (s[sigma[k + 1:]] - s[k])
            q = k + int(np.argmax(np.abs(l[k:])))
            p = l[q]
        else:
            q = k
            p = d[k]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        if q != k:
            l[[k, q]] = l[[q, k]]
            x[[k, q]] = x[[q, k]]
            G[[k, q]] = G[[q, k]]
            sigma[[k, q]] = sigma[[q, k]]
        # row k: columns 0..k-1 are lower-block (transposed-run) columns
        u[:k] = (G[k] @ B[:, :k]) / (s[sigma[k]] - s[sigma[:k]])
        denom = s[sigma[k]] - s[k + 1:]
        if q != k:
            # column q holds the pivot row's own diagonal; use the tracked value
            denom[q - k - 1] = 1.0
        u[k + 1:] = (G[k] @ B[:, k + 1:]) / denom
        if q != k:
            u[q] = d[q]

        x[k] /= p
        x[:k] -= np.outer(l[:k], x[k])
        x[k + 1:] -= np.outer(l[k + 1:], x[k])
        G[k] /= p
        G[:k] -= np.outer(l[:k], G[k])
        G[k + 1:] -= np.outer(l[k + 1:], G[k])
        B[:, k] /= p
        B[:, :k] -= np.outer(B[:, k], u[:k])
        B[:, k + 1:] -= np.outer(B[:, k], u[k + 1:])
        y[:, k] /= p
        y[:, :k] -= np.outer(y[:, k], u[:k])
        y[:, k + 1:] -= np.outer(y[:, k], u[k + 1:])

        d[k + 1:] -= l[k + 1:] * u[k + 1:] / p
        if q != k:
            gap = s[sigma[q]] - s[q]
            if abs(gap) < gap_tolerance:
                flagged.append(k)
            d[q] = (G[q] @ B[:, q]) / gap

        # accumulate the k-th summand of diag(T^-1); d[k] is free from here on.
        # u[j] belongs to original column sigma[j]; terms routed to an index
        # above k hit a zero of the upper-triangular factor and are skipped
        # (they are counted as the structural-zero multiplies they replace).
        l[k] = -1.0
        u[k] = -1.0
        d[k] = 0.0
        idx = sigma[:k + 1]
        keep = idx <= k
        d[idx[keep]] += l[idx[keep]] * u[:k + 1][keep] / p
        counter.add((2 * r + 1) * (n - 1) * 2
                    + 2 * m1 * (n - 1) + m1
                    + 2 * r * (n - 1) + r
                    + 2 * r * (n - 1) + r
                    + 2 * m2 * (n - 1) + m2
                    + 3 * j + 3 * (k + 1))

    # undo the pivoting on the columns of y and B
    y[:, sigma] = y.copy()
    B[:, sigma] = B.copy()

    report = SolveReport(x if b is not None else None, sigma,
                         counter.flops, counter.peak,
                         refreshed_diag_flags=flagged)
    inv = TrummerMatrix(G, -B, s, d)
    return TrummerInverseResult(inv, x if b is not None else None,
                                y if c is not None else None, report)


def displacement_of_inverse_check(T, dense_inverse=None):
    """Residual of D(T^-1) = -T^-1 (G B) T^-1, via the dense oracle."""
    from .core import dense_inverse_oracle, trummer_reconstruct_dense
    Ti = (dense_inverse if dense_inverse is not None
          else dense_inverse_oracle(trummer_reconstruct_dense(T)))
    disp = np.diag(T.s) @ Ti - Ti @ np.diag(T.s)
    return float(np.linalg.norm(disp + Ti @ (T.G @ T.B) @ Ti))
