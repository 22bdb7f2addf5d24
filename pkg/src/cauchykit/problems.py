"""Named benchmark problem families and their generator constructions.

Six families, identified by a short lowercase id:

  p1  well-conditioned Cauchy-like, rank 2, equispaced real nodes
  p2  the same construction with b = -0.3, severely ill-conditioned
  p3  Gaussian Toeplitz T[i, j] = a^((i-j)^2), solved through the
      Toeplitz-to-Cauchy reduction
  p4  generator-growth case: rank-2 generators that almost cancel, so
      |G B| ~ eps while the generator entries are O(1)
  t1  well-conditioned Trummer-like matrix with unit diagonal
  t2  diagonal-plus-rank-1 Trummer-like, (1+eps) I - u u^T, with the
      closed-form inverse (1+eps)^-1 (I + eps^-1 u u^T)

Every solve-type problem ships b = A e (e the all-ones vector, replicated
over m columns), so the exact solution is known and the forward error
||x - e|| / ||e|| is computable without an oracle.
"""

from dataclasses import dataclass

import numpy as np

from .core import CauchyLikeGenerators, TrummerMatrix, cauchy_matvec
from .toeplitz_bridge import gaussian_toeplitz, toeplitz_to_cauchy
from .trummer import trummer_matvec

PROBLEM_IDS = ("p1", "p2", "p3", "p4", "t1", "t2")


@dataclass
class ProblemSpec:
    """Parameters selecting one problem instance.

    a, b are the node parameters of p1/p2/p4 (t_i = a + i b, s_j = j b);
    for p3, a is the Gaussian Toeplitz parameter in (0, 1).  eps is the
    perturbation size of p4 and the conditioning parameter of t2.  seed
    drives the uniform random vectors of p4.  m is the number of
    right-hand-side columns.
    """

    id: str
    n: int = 128
    a: float = None
    b: float = None
    eps: float = None
    seed: int = 0
    m: int = 1

    def __post_init__(self):
        if self.id not in PROBLEM_IDS:
            raise ValueError(f"unknown problem id {self.id!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.m < 1:
            raise ValueError("m must be positive")
        defaults = {
            "p1": dict(a=1.0, b=2.0),
            "p2": dict(a=1.0, b=-0.3),
            "p3": dict(a=0.90),
            "p4": dict(a=1.0, b=2.0, eps=1e-12),
            "t1": dict(),
            "t2": dict(a=1.0, b=-0.3, eps=1e-3),
        }[self.id]
        for key, val in defaults.items():
            if getattr(self, key) is None:
                setattr(self, key, val)
        if self.id == "p3" and not 0.0 < self.a < 1.0:
            raise ValueError("p3 requires 0 < a < 1")
        if self.id in ("p4", "t2") and not self.eps > 0:
            raise ValueError("eps must be positive")


class Problem:
    """A generated problem instance ready to be solved.

    kind is one of "cauchy", "toeplitz", "trummer".  For every kind,
    x_true is the all-ones solution block and b = A x_true.  Toeplitz
    problems additionally carry the Cauchy-like image and its transform
    pair; Trummer problems carry a reference_inverse() callable when a
    closed form is available.
    """

    def __init__(self, spec, kind, operand, b, x_true,
                 bridge=None, reference_inverse=None):
        self.spec = spec
        self.kind = kind
        self.operand = operand
        self.b = b
        self.x_true = x_true
        self.bridge = bridge
        self.reference_inverse = reference_inverse


def _p1_family_nodes(spec):
    i = np.arange(1, spec.n + 1, dtype=np.float64)
    t = spec.a + i * spec.b
    s = i * spec.b
    return t.astype(np.complex128), s.astype(np.complex128)


def _cauchy_problem(spec, gen):
    x_true = np.ones((spec.n, spec.m), dtype=np.complex128)
    b = cauchy_matvec(gen, x_true)
    return Problem(spec, "cauchy", gen, b, x_true)


def _make_p1_p2(spec):
    n = spec.n
    t, s = _p1_family_nodes(spec)
    j = np.arange(1, n + 1)
    G = np.column_stack([np.ones(n), -np.ones(n)]).astype(np.complex128)
    B = np.vstack([(-1.0) ** j, 2.0 * np.ones(n)]).astype(np.complex128)
    return _cauchy_problem(spec, CauchyLikeGenerators(G, B, t, s))


def _make_p3(spec):
    T = gaussian_toeplitz(spec.n, spec.a)
    bridge = toeplitz_to_cauchy(T)
    x_true = np.ones((spec.n, spec.m), dtype=np.complex128)
    b = T.dense() @ x_true if spec.n <= 1024 else _toeplitz_matvec(T, x_true)
    return Problem(spec, "toeplitz", T, b, x_true, bridge=bridge)


def _toeplitz_matvec(T, v):
    from scipy.linalg import matmul_toeplitz
    return matmul_toeplitz((T.col, T.row), v)


def _make_p4(spec):
    n = spec.n
    t, s = _p1_family_nodes(spec)
    rng = np.random.default_rng(spec.seed)
    a = rng.uniform(0.0, 1.0, n)
    f = rng.uniform(0.0, 1.0, n)
    g = rng.uniform(0.0, 1.0, n)
    G = np.column_stack([a, a + spec.eps * f]).astype(np.complex128)
    B = np.vstack([a + spec.eps * g, -a]).astype(np.complex128)
    return _cauchy_problem(spec, CauchyLikeGenerators(G, B, t, s))


def _trummer_problem(spec, T, reference_inverse=None):
    x_true = np.ones((spec.n, spec.m), dtype=np.complex128)
    b = trummer_matvec(T, x_true)
    return Problem(spec, "trummer", T, b, x_true,
                   reference_inverse=reference_inverse)


def _make_t1(spec):
    n = spec.n
    i = np.arange(1, n + 1, dtype=np.float64)
    s = (i / n).astype(np.complex128)
    G = np.column_stack([i, -np.ones(n)]).astype(np.complex128)
    B1 = np.cos(np.pi * i / n)
    # second generator row chosen so that G[i, :] @ B[:, i] = 0 exactly
    B = np.vstack([B1, i * B1]).astype(np.complex128)
    d = np.ones(n, dtype=np.complex128)
    return _trummer_problem(spec, TrummerMatrix(G, B, s, d))


def _make_t2(spec):
    n = spec.n
    i = np.arange(1, n + 1, dtype=np.float64)
    v = i / n
    u = v / np.linalg.norm(v)
    s = (spec.a + i * spec.b).astype(np.complex128)
    su = s.real * u
    # displacement of (1+eps) I - u u^T: entries -(s_i - s_j) u_i u_j
    G = np.column_stack([-su, u]).astype(np.complex128)
    B = np.vstack([u, su]).astype(np.complex128)
    d = (1.0 + spec.eps) - u * u
    T = TrummerMatrix(G, B, s, d.astype(np.complex128))

    def reference_inverse():
        return (np.eye(n) + np.outer(u, u) / spec.eps) / (1.0 + spec.eps)

    return _trummer_problem(spec, T, reference_inverse=reference_inverse)


_MAKERS = {
    "p1": _make_p1_p2,
    "p2": _make_p1_p2,
    "p3": _make_p3,
    "p4": _make_p4,
    "t1": _make_t1,
    "t2": _make_t2,
}


def generate_problem(spec):
    """Build the problem instance described by `spec`."""
    return _MAKERS[spec.id](spec)
