import numpy as np
import pytest

from cauchykit import CauchyLikeGenerators, TrummerMatrix

# verdict lines recorded by the acceptance tests, replayed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_cauchy(rng, n, r, complex_gen=True, spread=1.0):
    """Well-conditioned Cauchy-like instance: separated real node grids."""
    t = np.arange(1, n + 1, dtype=np.float64) * spread + 0.5 * spread
    s = np.arange(1, n + 1, dtype=np.float64) * spread
    G = rng.standard_normal((n, r))
    B = rng.standard_normal((r, n))
    if complex_gen:
        G = G + 1j * rng.standard_normal((n, r))
        B = B + 1j * rng.standard_normal((r, n))
    return CauchyLikeGenerators(G, B, t.astype(complex), s.astype(complex))


def random_trummer(rng, n, r, scale_row=None):
    """Valid Trummer-like instance: last generator row forces zero diagonal."""
    s = np.sort(rng.standard_normal(n)) + 0j
    G = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    B = rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
    if r > 1:
        B[r - 1] = -np.einsum("ij,ji->i", G[:, : r - 1], B[: r - 1]) \
            / G[:, r - 1]
    else:
        B[0] = 0.0  # r=1 admits only a zero off-diagonal coupling row-wise
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if scale_row is not None:
        G[scale_row] *= 40.0
        d[scale_row] *= 40.0
    return TrummerMatrix(G, B, s, d)


def random_trummer_r1(rng, n):
    """Rank-1 displacement: T = D + alpha u v^T with forced zero diagonal."""
    s = np.sort(rng.standard_normal(n)) + 0j
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    # G B must have zero diagonal for rank 1: impossible unless u_i v_i = 0,
    # so alternate the supports of u and v
    u[::2] = 0.0
    v[1::2] = 0.0
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return TrummerMatrix(u[:, None], v[None, :], s, d)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
