"""O(n)-space Cauchy-like solver that downdates the second generator.

Forward sweep: classic pivoted GKO, but the computed rows of U are thrown
away; only y = L^{-1} P b and the pivots survive.  Backward sweep: since
row k of G and column k of B are left untouched by steps k+1..n, the
generator update on B can be reversed.  Undoing it reproduces row k of U,

    U[k, l] = G_k^{(k)} @ B^{(k+1)}[:, l] / (s[k] - s[l]),      l > k,
    B^{(k)}[:, l] = B^{(k+1)}[:, l] + B^{(k)}[:, k] * U[k, l] / U[k, k],

which is exactly what back-substitution needs, one row at a time from the
bottom.  In exact arithmetic B is restored to its input value, so the
relative difference ||B_final - B_input|| / ||B_input|| doubles as an a
posteriori accuracy indicator.

Scratch is the two vectors l, u (2n complex slots); leading flop cost is
(6r + 2m + 3/2) n^2, same as the extended-matrix variant.  The solution
rows become available in the order n-1, n-2, ..., 0; `solve_downdating_streaming`
hands each one to a caller-supplied sink as soon as it is final.
"""

import warnings

import numpy as np

from .core import (NodeCollision, NonInjectiveNodes, OpCounter,
                   SingularMatrix, SolveReport, StreamingSinkError,
                   _has_repeats)
from .gko_dense import NEAR_ZERO_PIVOT_FACTOR


def _check_preconditions(gen):
    if _has_repeats(gen.s):
        raise NonInjectiveNodes("downdating solver needs injective s")
    if not gen.is_fully_reconstructible():
        raise NodeCollision("solver requires t[i] != s[j] for all i, j")


def solve_downdating(gen, b, aposteriori=True,
                     near_zero_factor=NEAR_ZERO_PIVOT_FACTOR):
    """Solve C x = b in O(n) auxiliary space (downdating variant).

    With aposteriori=True (the default) an extra r*n-slot copy of B is kept
    and the report carries the relative B-restoration error; pass False for
    the minimal-memory mode, which stays within 2n + O(r + m) scratch slots.
    """
    return _solve_downdating_impl(gen, b, aposteriori, near_zero_factor,
                                  sink=None, trace=None)


def solve_downdating_streaming(gen, b, sink, aposteriori=True,
                               near_zero_factor=NEAR_ZERO_PIVOT_FACTOR):
    """Like solve_downdating, but calls sink(k, row) for k = n-1, ..., 0.

    Each row is passed as soon as it is final: row n-1 right after the
    forward sweep, then one more row per backward step.  If the sink raises,
    the solve is aborted with StreamingSinkError and no result is returned.
    """
    if not callable(sink):
        raise TypeError("sink must be callable")
    return _solve_downdating_impl(gen, b, aposteriori, near_zero_factor,
                                  sink=sink, trace=None)


def _emit(sink, k, row, squeeze):
    try:
        sink(k, row[0] if squeeze else row.copy())
    except Exception as exc:
        raise StreamingSinkError(f"sink failed at row {k}") from exc


def _solve_downdating_impl(gen, b, aposteriori, near_zero_factor, sink, trace):
    _check_preconditions(gen)
    n, r = gen.n, gen.r
    B = gen.B.copy()
    t = gen.t.copy()
    s = gen.s
    x_in = np.asarray(b, dtype=np.complex128)
    squeeze = x_in.ndim == 1
    if squeeze:
        x_in = x_in[:, None]
    if x_in.shape[0] != n:
        raise ValueError("right-hand side has wrong number of rows")
    m = x_in.shape[1]
    # G and the right-hand side receive the same rank-1 update each step, so
    # they share one array: one fused update (and one fused row swap) per step
    GX = np.empty((n, r + m), dtype=np.complex128)
    GX[:, :r] = gen.G
    GX[:, r:] = x_in
    G = GX[:, :r]
    x = GX[:, r:]

    counter = OpCounter()
    counter.alloc(2 * n)  # l and u
    if aposteriori:
        counter.alloc(r * n)
        B_input = gen.B.copy()
    l = np.empty(n, dtype=np.complex128)
    u = np.empty(n, dtype=np.complex128)
    sigma = np.arange(n)
    near_zero = []
    eps = np.finfo(float).eps

    # forward sweep: pivoted GKO, keeping only y = L^{-1} P b and the pivots
    for k in range(n - 1):
        j = n - k - 1
        lv = l[k:]
        np.divide(G[k:] @ B[:, k], t[k:] - s[k], out=lv)
        q = k + int(np.argmax(np.abs(lv)))
        p = l[q]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        if abs(p) < near_zero_factor * eps * np.linalg.norm(lv):
            near_zero.append(k)
        if q != k:
            l[[k, q]] = l[[q, k]]
            GX[[k, q]] = GX[[q, k]]
            t[[k, q]] = t[[q, k]]
            sigma[[k, q]] = sigma[[q, k]]
        u[k] = p
        uv = u[k + 1:]
        np.divide(G[k] @ B[:, k + 1:], t[k] - s[k + 1:], out=uv)
        GX[k + 1:] -= l[k + 1:, None] * (GX[k] / p)
        B[:, k + 1:] -= (B[:, k] / p)[:, None] * uv
        counter.add((2 * r + 1) * (2 * j + 1)
                    + 2 * m * j + m
                    + 2 * r * j + r
                    + 2 * r * j + r)
    u[n - 1] = (G[n - 1] @ B[:, n - 1]) / (t[n - 1] - s[n - 1])
    counter.add(2 * r + 1)
    if u[n - 1] == 0:
        raise SingularMatrix(f"zero pivot at step {n - 1}")

    x[n - 1] /= u[n - 1]
    counter.add(m)
    pivots = u.copy()  # u is reused for rows of U in the backward sweep
    if trace is not None:
        trace.append(("forward_done",))
    if sink is not None:
        _emit(sink, n - 1, x[n - 1], squeeze)

    # backward sweep: downdate B, recover the rows of U, back-substitute
    for k in range(n - 2, -1, -1):
        j = n - k - 1
        uv = u[k + 1:]
        np.divide(G[k] @ B[:, k + 1:], s[k] - s[k + 1:], out=uv)
        B[:, k + 1:] += (B[:, k] / u[k])[:, None] * uv
        x[k] -= uv @ x[k + 1:]
        x[k] /= u[k]
        counter.add((2 * r + 1) * j + 2 * r * j + r + 2 * m * j + m)
        if trace is not None:
            trace.append(("downdated", k))
        if sink is not None:
            _emit(sink, k, x[k], squeeze)

    apost = None
    if aposteriori:
        apost = float(np.linalg.norm(B - B_input) / np.linalg.norm(B_input))
    if near_zero:
        warnings.warn(f"near-zero pivots at steps {near_zero}", RuntimeWarning)
    return SolveReport(x[:, 0] if squeeze else x, sigma,
                       counter.flops, counter.peak,
                       aposteriori_b_error=apost,
                       pivots=pivots,
                       near_zero_pivot_steps=near_zero)
