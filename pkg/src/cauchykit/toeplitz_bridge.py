"""Reduction of a Toeplitz system to a Cauchy-like system of rank <= 2.

With the down-shift matrices Z_phi (subdiagonal ones, corner entry phi),
the displacement Z_1 T - T Z_{-1} of any Toeplitz matrix is nonzero only in
its first row and last column, hence has rank <= 2.  Both shifts are
diagonalized by the unitary DFT F (kernel omega^{jk} / sqrt(n), with
omega = exp(2 pi i / n)):

    Z_1  = F^H diag(omega^k) F
    Z_-1 = D^-1 F^H diag(eta omega^k) F D,    D = diag(eta^k), eta^n = -1.

Conjugating, C = F T D^-1 F^H satisfies

    diag(t) C - C diag(s) = (F G_T)(B_T D^-1 F^H)

with t_k = omega^k and s_k = eta omega^k, so C is Cauchy-like with the same
displacement rank and its nodes are roots of unity on two interleaved
circles (min gap 2 sin(pi / 2n), never colliding).  Solving T x = b then
amounts to solving C x_hat = F b followed by x = D^-1 F^H x_hat; all four
transforms are FFTs.
"""

import numpy as np

from .core import CauchyLikeGenerators


class ToeplitzOperator:
    """Toeplitz matrix defined by its first column and first row."""

    def __init__(self, col, row):
        col = np.asarray(col, dtype=np.complex128)
        row = np.asarray(row, dtype=np.complex128)
        if col.ndim != 1 or row.shape != col.shape:
            raise ValueError("col and row must be 1-d of equal length")
        if col[0] != row[0]:
            raise ValueError("col[0] and row[0] must agree")
        self.col = col
        self.row = row

    @property
    def n(self):
        return len(self.col)

    def entry(self, i, j):
        return self.col[i - j] if i >= j else self.row[j - i]

    def dense(self):
        n = self.n
        idx = np.arange(n)
        d = idx[:, None] - idx[None, :]
        out = np.where(d >= 0, self.col[np.abs(d)], self.row[np.abs(d)])
        return out.astype(np.complex128)


def gaussian_toeplitz(n, a):
    """The Gaussian Toeplitz matrix T[i, j] = a^((i-j)^2), 0 < a < 1."""
    if not 0.0 < a < 1.0:
        raise ValueError("parameter a must lie in (0, 1)")
    diag_vals = a ** (np.arange(n, dtype=float) ** 2)
    return ToeplitzOperator(diag_vals, diag_vals)


def _dft(v):
    """Unitary DFT with kernel omega^{jk} / sqrt(n) applied along axis 0."""
    n = v.shape[0]
    return np.fft.ifft(v, axis=0) * np.sqrt(n)


def _idft(v):
    n = v.shape[0]
    return np.fft.fft(v, axis=0) / np.sqrt(n)


class ToeplitzCauchyMap:
    """Cauchy-like image of a Toeplitz matrix plus the two solution maps."""

    def __init__(self, gen, eta_powers):
        self.gen = gen
        self._eta_powers = eta_powers

    def forward_rhs(self, b):
        """Map a Toeplitz right-hand side b to the Cauchy-like one, F b."""
        return _dft(np.asarray(b, dtype=np.complex128))

    def backward_solution(self, x_hat):
        """Map a Cauchy-like solution back: x = D^-1 F^H x_hat."""
        x = _idft(np.asarray(x_hat, dtype=np.complex128))
        if x.ndim == 1:
            return x / self._eta_powers
        return x / self._eta_powers[:, None]


def toeplitz_to_cauchy(T):
    """Cauchy-like generators for F T D^-1 F^H, with the transform pair."""
    n = T.n
    k = np.arange(n)
    omega = np.exp(2j * np.pi / n)
    eta = np.exp(1j * np.pi / n)
    t_nodes = omega ** k
    s_nodes = eta * t_nodes
    eta_powers = eta ** k

    # sparse displacement Z_1 T - T Z_{-1}: first row and last column only.
    # Row 0: T[n-1, j] - T[0, j+1]; column n-1: T[i-1, n-1] + T[i, 0];
    # the overlapping corner (0, n-1) is T[n-1, n-1] + T[0, 0].
    first_row = np.empty(n, dtype=np.complex128)
    first_row[: n - 1] = T.col[n - 1 - k[: n - 1]] - T.row[k[: n - 1] + 1]
    first_row[n - 1] = 2.0 * T.col[0]
    last_col = np.empty(n, dtype=np.complex128)
    last_col[0] = 0.0  # the corner is carried by first_row
    last_col[1:] = T.row[n - k[1:]] + T.col[k[1:]]

    e_first = np.zeros(n, dtype=np.complex128)
    e_first[0] = 1.0
    e_last = np.zeros(n, dtype=np.complex128)
    e_last[n - 1] = 1.0
    Gt = np.column_stack([e_first, last_col])
    Bt = np.vstack([first_row, e_last])

    G = _dft(Gt)
    B = _idft((Bt / eta_powers[None, :]).T).T
    gen = CauchyLikeGenerators(G, B, t_nodes, s_nodes)
    return ToeplitzCauchyMap(gen, eta_powers)
