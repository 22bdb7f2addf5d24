import numpy as np
import pytest

from cauchykit import (NodeMismatch, SingularMatrix, TrummerMatrix,
                       dense_inverse_oracle, displacement_of_inverse_check,
                       trummer_add, trummer_invert, trummer_matvec,
                       trummer_mul, trummer_reconstruct_dense, trummer_solve)

from conftest import random_trummer, random_trummer_r1


def displacement(M, s):
    return np.diag(s) @ M - M @ np.diag(s)


def numerical_rank(M, rel=1e-10):
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rel * sv[0]))


def test_matvec_matches_dense(rng):
    T = random_trummer(rng, 9, 3)
    M = trummer_reconstruct_dense(T)
    v = rng.standard_normal((9, 2)) + 1j * rng.standard_normal((9, 2))
    assert np.linalg.norm(trummer_matvec(T, v) - M @ v) < 1e-11


def test_identity_matvec():
    n = 5
    T = TrummerMatrix(np.zeros((n, 1)), np.zeros((1, n)),
                      np.arange(n, dtype=complex), np.ones(n))
    b = np.arange(n, dtype=complex)
    assert np.allclose(trummer_matvec(T, b), b)


def test_add_and_mul_match_dense(rng):
    T = random_trummer(rng, 8, 2)
    S = random_trummer(rng, 8, 3)
    S = TrummerMatrix(S.G, S.B, T.s, S.d)  # share the node vector
    Td = trummer_reconstruct_dense(T)
    Sd = trummer_reconstruct_dense(S)
    A = trummer_add(T, S)
    P = trummer_mul(T, S)
    assert np.linalg.norm(trummer_reconstruct_dense(A) - (Td + Sd)) < 1e-10
    assert np.linalg.norm(trummer_reconstruct_dense(P) - Td @ Sd) < 1e-9
    assert A.generator_defect() < 1e-10
    assert P.generator_defect() < 1e-9


def test_mismatched_nodes_rejected(rng):
    T = random_trummer(rng, 6, 2)
    S = random_trummer(rng, 6, 2)  # fresh draw: different node vector
    with pytest.raises(NodeMismatch):
        trummer_add(T, S)
    with pytest.raises(NodeMismatch):
        trummer_mul(T, S)


def test_solve_matches_dense_oracle(rng):
    for scale_row in (None, 3):  # plain and pivot-forcing row scaling
        T = random_trummer(rng, 16, 2, scale_row=scale_row)
        M = trummer_reconstruct_dense(T)
        b = rng.standard_normal((16, 2)) + 1j * rng.standard_normal((16, 2))
        rep = trummer_solve(T, b)
        x0 = np.linalg.solve(M, b)
        assert np.linalg.norm(rep.x - x0) < 1e-11 * np.linalg.norm(x0)
        assert rep.peak_workspace == 2 * T.n


def test_solve_identity():
    n = 6
    T = TrummerMatrix(np.zeros((n, 1)), np.zeros((1, n)),
                      np.arange(n, dtype=complex), np.ones(n))
    b = np.arange(1, n + 1, dtype=complex)
    assert np.allclose(trummer_solve(T, b).x, b)


def test_solve_agrees_with_downdating_on_dense_reconstruction(rng):
    # push the reconstructed matrix through the generic downdating solver
    # using slightly shifted row nodes so every entry is reconstructible
    from cauchykit import CauchyLikeGenerators, solve_downdating
    T = random_trummer(rng, 10, 2)
    M = trummer_reconstruct_dense(T)
    b = rng.standard_normal(10) + 0j
    x_fast = trummer_solve(T, b).x
    x_dense = np.linalg.solve(M, b)
    assert np.linalg.norm(x_fast - x_dense) < 1e-11 * np.linalg.norm(x_dense)
    t = T.s + 1e-3
    C = CauchyLikeGenerators(np.eye(10), np.diag(t) @ M - M @ np.diag(T.s),
                             t, T.s)
    x_gen = solve_downdating(C, b).x
    assert np.linalg.norm(x_gen - x_dense) < 1e-8 * np.linalg.norm(x_dense)


def test_invert_identity():
    n = 5
    T = TrummerMatrix(np.zeros((n, 1)), np.zeros((1, n)),
                      np.arange(n, dtype=complex), np.ones(n))
    res = trummer_invert(T)
    assert np.allclose(res.inv.d, np.ones(n))
    assert np.linalg.norm(res.inv.G @ res.inv.B) < 1e-14


def test_invert_matches_dense_oracle(rng):
    for scale_row in (None, 5):
        T = random_trummer(rng, 20, 2, scale_row=scale_row)
        M = trummer_reconstruct_dense(T)
        Mi = dense_inverse_oracle(M)
        b = rng.standard_normal((20, 2)) + 0j
        c = rng.standard_normal((1, 20)) + 0j
        res = trummer_invert(T, b=b, c=c)
        rel = np.linalg.norm(Mi)
        assert np.linalg.norm(res.inv.d - np.diag(Mi)) < 1e-11 * rel
        assert np.linalg.norm(trummer_reconstruct_dense(res.inv) - Mi) \
            < 1e-11 * rel
        assert np.linalg.norm(res.x - np.linalg.solve(M, b)) < 1e-10
        assert np.linalg.norm(res.y - c @ Mi) < 1e-10
        assert res.report.peak_workspace == 2 * T.n


def test_invert_generators_satisfy_displacement_equation(rng):
    T = random_trummer(rng, 12, 2)
    Mi = dense_inverse_oracle(trummer_reconstruct_dense(T))
    res = trummer_invert(T)
    disp = displacement(Mi, T.s)
    assert np.linalg.norm(disp - res.inv.G @ res.inv.B) \
        < 1e-11 * np.linalg.norm(Mi)
    assert res.inv.generator_defect() < 1e-10 * np.linalg.norm(Mi)


def test_invert_singular_raises():
    n = 4
    T = TrummerMatrix(np.zeros((n, 1)), np.zeros((1, n)),
                      np.arange(n, dtype=complex), np.zeros(n))
    with pytest.raises(SingularMatrix):
        trummer_invert(T)


def test_displacement_rank_laws(rng):
    """Sum, product, inverse: rank of the displacement behaves like a
    derivative: rank(D(A+B)) <= rA+rB, rank(D(AB)) <= rA+rB,
    rank(D(A^-1)) == rank(D(A))."""
    for trial in range(50):
        n = int(rng.integers(4, 17))
        rA = int(rng.integers(1, 4))
        rB = int(rng.integers(1, 4))
        A = random_trummer(rng, n, max(rA, 2))
        Bm = random_trummer(rng, n, max(rB, 2))
        Bm = type(Bm)(Bm.G, Bm.B, A.s, Bm.d)
        Ad = trummer_reconstruct_dense(A)
        Bd = trummer_reconstruct_dense(Bm)
        ra = numerical_rank(displacement(Ad, A.s))
        rb = numerical_rank(displacement(Bd, A.s))
        assert numerical_rank(displacement(Ad + Bd, A.s)) <= ra + rb
        assert numerical_rank(displacement(Ad @ Bd, A.s)) <= ra + rb
        Ai = np.linalg.inv(Ad)
        assert numerical_rank(displacement(Ai, A.s)) == ra


def test_displacement_of_inverse_identity_and_random(rng):
    n = 5
    I = TrummerMatrix(np.zeros((n, 1)), np.zeros((1, n)),
                      np.arange(n, dtype=complex), np.ones(n))
    assert displacement_of_inverse_check(I) < 1e-14
    T = random_trummer(rng, 8, 2)
    Mi = dense_inverse_oracle(trummer_reconstruct_dense(T))
    bound = 1e-11 * np.linalg.norm(Mi) ** 2 * np.linalg.norm(T.G @ T.B)
    assert displacement_of_inverse_check(T) < bound


def test_rank1_displacement_inverse_rank(rng):
    T = random_trummer_r1(rng, 6)
    M = trummer_reconstruct_dense(T)
    Mi = np.linalg.inv(M)
    assert numerical_rank(displacement(M, T.s)) == 1
    assert numerical_rank(displacement(Mi, T.s)) == 1
