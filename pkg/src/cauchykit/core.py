"""Core types and oracles for Cauchy-like and Trummer-like matrices.

A Cauchy-like matrix C of size n with displacement rank r is represented
compactly by a generator pair (G, B) and two node vectors (t, s) through

    diag(t) @ C - C @ diag(s) = G @ B,

so that, whenever t[i] != s[j],

    C[i, j] = (G[i, :] @ B[:, j]) / (t[i] - s[j]).

A Trummer-like matrix has t == s (injective), which makes exactly the main
diagonal non-reconstructible; the diagonal is carried explicitly.

This module also provides the dense Gaussian-elimination oracle used by the
test suite and the flop/workspace accounting shared by all fast solvers.

Accounting model: `flops` counts one unit per scalar (complex) multiply,
add, subtract or divide.  `peak_workspace` counts complex scratch slots that
the algorithm's storage plan allocates beyond its inputs and outputs; the
working copies of the inputs (which the in-place formulation of the
algorithms would overwrite) are not charged, and neither are transient
buffers created by vectorized arithmetic.
"""

import numpy as np


DEFAULT_TOL = 1e-13


class NodeCollision(ValueError):
    """A requested entry has t[i] == s[j] and cannot be reconstructed."""


class NonInjectiveNodes(ValueError):
    """A node vector required to be injective has repeated entries."""


class NodeMismatch(ValueError):
    """Two Trummer-like operands do not share the same node vector."""


class SingularMatrix(ValueError):
    """Gaussian elimination hit an exactly zero pivot."""


class StreamingSinkError(RuntimeError):
    """A streaming solution sink raised; the solve was aborted."""


def _as_complex_matrix(A):
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError("expected a 2-d array")
    return A


def _as_complex_vector(v):
    v = np.asarray(v, dtype=np.complex128)
    if v.ndim != 1:
        raise ValueError("expected a 1-d array")
    return v


def _has_repeats(v):
    """Exact repeated-entry check, O(n log n) by lexicographic sort."""
    if len(v) < 2:
        return False
    order = np.lexsort((v.imag, v.real))
    w = v[order]
    return bool(np.any(w[1:] == w[:-1]))


def _vectors_intersect(a, b):
    joined = np.concatenate([a, b])
    order = np.lexsort((joined.imag, joined.real))
    w = joined[order]
    idx = order < len(a)
    same = w[1:] == w[:-1]
    # a collision across the two vectors shows up as equal neighbours coming
    # from different halves
    return bool(np.any(same & (idx[1:] != idx[:-1])))


class OpCounter:
    """Flop and peak-workspace accumulator threaded through one solve."""

    __slots__ = ("flops", "_current", "peak")

    def __init__(self):
        self.flops = 0
        self._current = 0
        self.peak = 0

    def add(self, n):
        self.flops += int(n)

    def alloc(self, slots):
        self._current += int(slots)
        if self._current > self.peak:
            self.peak = self._current

    def free(self, slots):
        self._current -= int(slots)


class CauchyLikeGenerators:
    """Compact representation (G, B, t, s) of a Cauchy-like matrix.

    G is n x r (row-major), B is r x n (column-major), t holds the row
    nodes and s the column nodes.
    """

    def __init__(self, G, B, t, s):
        G = np.ascontiguousarray(_as_complex_matrix(G))
        B = np.asfortranarray(_as_complex_matrix(B))
        t = _as_complex_vector(t)
        s = _as_complex_vector(s)
        n, r = G.shape
        if B.shape != (r, n):
            raise ValueError(f"B must be {r}x{n}, got {B.shape}")
        if t.shape != (n,) or s.shape != (n,):
            raise ValueError("t and s must have length n")
        if r < 1:
            raise ValueError("displacement rank r must be at least 1")
        self.G = G
        self.B = B
        self.t = t
        self.s = s

    @property
    def n(self):
        return self.G.shape[0]

    @property
    def r(self):
        return self.G.shape[1]

    def is_fully_reconstructible(self):
        return not _vectors_intersect(self.t, self.s)


class TrummerMatrix:
    """Trummer-like matrix: generators (G, B), shared nodes s, diagonal d."""

    def __init__(self, G, B, s, d):
        G = np.ascontiguousarray(_as_complex_matrix(G))
        B = np.asfortranarray(_as_complex_matrix(B))
        s = _as_complex_vector(s)
        d = _as_complex_vector(d)
        n, r = G.shape
        if B.shape != (r, n) or s.shape != (n,) or d.shape != (n,):
            raise ValueError("inconsistent Trummer-like dimensions")
        if _has_repeats(s):
            raise NonInjectiveNodes("Trummer-like node vector must be injective")
        self.G = G
        self.B = B
        self.s = s
        self.d = d

    @property
    def n(self):
        return self.G.shape[0]

    @property
    def r(self):
        return self.G.shape[1]

    def generator_defect(self):
        """max |G[i,:] @ B[:,i]|; zero (to rounding) for a valid representation.

        The displacement diag(s) T - T diag(s) has zero diagonal, so the
        generators of a genuine Trummer-like matrix satisfy G[i,:] @ B[:,i] = 0.
        """
        return float(np.max(np.abs(np.einsum("ij,ji->i", self.G, self.B))))


class SolveReport:
    """Solution plus instrumentation returned by every fast solver."""

    def __init__(self, x, sigma, flops, peak_workspace,
                 aposteriori_b_error=None, pivots=None,
                 near_zero_pivot_steps=(), refreshed_diag_flags=()):
        self.x = x
        self.sigma = np.asarray(sigma, dtype=np.intp)
        self.flops = int(flops)
        self.peak_workspace = int(peak_workspace)
        self.aposteriori_b_error = aposteriori_b_error
        self.pivots = pivots
        self.near_zero_pivot_steps = tuple(near_zero_pivot_steps)
        self.refreshed_diag_flags = tuple(refreshed_diag_flags)


class ValidationReport:
    def __init__(self, s_injective, t_injective, disjoint, min_s_gap):
        self.s_injective = s_injective
        self.t_injective = t_injective
        self.disjoint = disjoint
        self.min_s_gap = min_s_gap


def validate(gen):
    """Report-only validation of the node vectors of `gen`."""
    s, t = gen.s, gen.t
    min_gap = np.inf
    if len(s) > 1:
        diff = np.abs(s[:, None] - s[None, :])
        np.fill_diagonal(diff, np.inf)
        min_gap = float(diff.min())
    return ValidationReport(
        s_injective=not _has_repeats(s),
        t_injective=not _has_repeats(t),
        disjoint=not _vectors_intersect(t, s),
        min_s_gap=min_gap,
    )


def reconstruct_entry(gen, i, j):
    """Entry C[i, j] from the generator representation (0-based indices)."""
    ti, sj = gen.t[i], gen.s[j]
    if ti == sj:
        raise NodeCollision(f"t[{i}] == s[{j}]: entry not reconstructible")
    return complex((gen.G[i, :] @ gen.B[:, j]) / (ti - sj))


def reconstruct_dense(gen):
    """Full dense matrix via the reconstruction formula; needs t[i] != s[j]."""
    denom = gen.t[:, None] - gen.s[None, :]
    zero = np.nonzero(denom == 0)
    if zero[0].size:
        i, j = int(zero[0][0]), int(zero[1][0])
        raise NodeCollision(f"t[{i}] == s[{j}]: matrix not fully reconstructible")
    return (gen.G @ gen.B) / denom


def cauchy_row(gen, i):
    """Row i of the represented matrix, O(n r) time and O(n) space."""
    denom = gen.t[i] - gen.s
    if np.any(denom == 0):
        j = int(np.nonzero(denom == 0)[0][0])
        raise NodeCollision(f"t[{i}] == s[{j}]")
    return (gen.G[i, :] @ gen.B) / denom


def cauchy_matvec(gen, v, block=256):
    """Product C @ v without materializing C (blocked row reconstruction)."""
    v = np.asarray(v, dtype=np.complex128)
    n = gen.n
    out = np.empty((n,) + v.shape[1:], dtype=np.complex128)
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        denom = gen.t[i0:i1, None] - gen.s[None, :]
        if np.any(denom == 0):
            raise NodeCollision("node collision inside matvec block")
        out[i0:i1] = ((gen.G[i0:i1] @ gen.B) / denom) @ v
    return out


def trummer_reconstruct_dense(T):
    """Dense form of a Trummer-like matrix: formula off-diagonal, d on it."""
    denom = T.s[:, None] - T.s[None, :]
    np.fill_diagonal(denom, 1.0)  # placeholder, overwritten below
    M = (T.G @ T.B) / denom
    np.fill_diagonal(M, T.d)
    return M


def trummer_row(T, i):
    denom = T.s[i] - T.s
    denom[i] = 1.0
    row = (T.G[i, :] @ T.B) / denom
    row[i] = T.d[i]
    return row


def trummer_col(T, j):
    denom = T.s - T.s[j]
    denom[j] = 1.0
    col = (T.G @ T.B[:, j]) / denom
    col[j] = T.d[j]
    return col


def dense_lu_oracle(A, pivot=True):
    """Plain Gaussian elimination, the independent oracle for the fast paths.

    Returns (L, U, sigma, pivots) with P A = L U where row k of P A is row
    sigma[k] of A.  Raises SingularMatrix on an exactly zero pivot.
    """
    A = _as_complex_matrix(A).copy()
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("oracle expects a square matrix")
    sigma = np.arange(n)
    L = np.eye(n, dtype=np.complex128)
    pivots = np.empty(n, dtype=np.complex128)
    for k in range(n):
        if pivot:
            q = k + int(np.argmax(np.abs(A[k:, k])))
            if q != k:
                A[[k, q]] = A[[q, k]]
                L[[k, q], :k] = L[[q, k], :k]
                sigma[[k, q]] = sigma[[q, k]]
        p = A[k, k]
        if p == 0:
            raise SingularMatrix(f"zero pivot at step {k}")
        pivots[k] = p
        L[k + 1:, k] = A[k + 1:, k] / p
        A[k + 1:, k:] -= np.outer(L[k + 1:, k], A[k, k:])
    return L, np.triu(A), sigma, pivots


def dense_solve_oracle(A, b):
    """Solve A x = b by partial-pivoted Gaussian elimination (oracle path)."""
    b = np.asarray(b, dtype=np.complex128)
    squeeze = b.ndim == 1
    if squeeze:
        b = b[:, None]
    L, U, sigma, _ = dense_lu_oracle(A)
    n = A.shape[0]
    y = b[sigma].copy()
    for k in range(1, n):
        y[k] -= L[k, :k] @ y[:k]
    x = y
    for k in range(n - 1, -1, -1):
        x[k] -= U[k, k + 1:] @ x[k + 1:]
        x[k] /= U[k, k]
    return x[:, 0] if squeeze else x


def dense_inverse_oracle(A):
    return dense_solve_oracle(A, np.eye(len(A), dtype=np.complex128))


def singularity_witness(r, n, seed=0):
    """Cauchy-like generators that are provably rank-deficient.

    The column nodes s contain r+1 equal entries, which forces the
    represented matrix (reconstructed with all t distinct from all s) to be
    singular: the corresponding r+1 columns factor through an n x r matrix.
    """
    if r + 1 > n:
        raise ValueError("need r + 1 <= n")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    B = rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
    s = np.arange(1, n + 1, dtype=np.complex128)
    s[: r + 1] = s[0]
    t = np.arange(n, dtype=np.complex128) + 0.5  # disjoint from s by 1/2 offset
    return CauchyLikeGenerators(G, B, t, s)
