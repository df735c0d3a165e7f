"""Twisting maps from (sigma, delta) and the twisted tensor product algebra.

The twisting map tau: B (x) A -> A (x) B generated by the Ore relation
    x a = sigma(a) x + delta(a)
is materialized both as a table on basis pairs and as a square matrix, in
the fixed A-major basis order index(a_k (x) x^i) = k*n + i (and the mirror
r*dim(A) + k on the B (x) A side).  Construction refuses to proceed when
the truncation vanishing conditions fail, and every accepted map is
certified against the unit conditions and the hexagon relation on all
basis 4-tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Algebra, LinearOperator, truncated_poly_algebra
from .report import Report
from .shuffle import shuffle_family, verify_truncation_conditions


class RejectedTwist(Exception):
    """The truncation vanishing conditions (or twisting axioms) failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InternalInconsistency(Exception):
    """An invariant that construction guarantees was found broken."""


@dataclass
class TwistingMap:
    A: Algebra
    B: Algebra
    matrix: np.ndarray  # (dimA*n) x (n*dimA), column (r,k) = tau(x^r (x) a_k)
    sigma: LinearOperator = None
    delta: LinearOperator = None

    @property
    def field(self):
        return self.A.field

    @property
    def n(self):
        return self.B.dim

    def ba_index(self, r, k):
        return r * self.A.dim + k

    def ab_index(self, k, i):
        return k * self.B.dim + i

    def apply_basis(self, r, k):
        """tau(x^r (x) a_k) as a coefficient vector over the A-major basis."""
        return self.matrix[:, self.ba_index(r, k)]

    def table(self):
        """dict (r, k) -> coefficient vector, the spec-level table view."""
        return {
            (r, k): self.apply_basis(r, k)
            for r in range(self.n)
            for k in range(self.A.dim)
        }


@dataclass
class TwistingMapInverse:
    tau: TwistingMap
    matrix: np.ndarray  # (n*dimA) x (dimA*n): A (x) B -> B (x) A

    def apply_basis(self, k, i):
        return self.matrix[:, self.tau.ab_index(k, i)]


@dataclass
class TwistedAlgebra:
    A: Algebra
    B: Algebra
    tau: TwistingMap
    product: Algebra  # the twisted product realized by structure constants

    @property
    def dim(self):
        return self.product.dim


def build_tau(A: Algebra, sigma: LinearOperator, delta: LinearOperator, n: int) -> TwistingMap:
    """The twisting map on the degree-n truncation, via the shuffle expansion."""
    gate = verify_truncation_conditions(sigma, delta, n)
    if not gate.passed:
        bad = gate.first_failure
        raise RejectedTwist(f"truncation conditions failed: {bad.name}", bad.witness)
    F = A.field
    dimA = A.dim
    B = truncated_poly_algebra(F, n, warn=lambda _m: None)
    fam = shuffle_family(n - 1, sigma, delta)
    M = F.zeros((dimA * n, n * dimA))
    for r in range(n):
        for i in range(r + 1):
            s_ij = fam[(i, r - i)]  # s_{(i, r-i)}(sigma, delta)
            for k in range(dimA):
                vec = s_ij[:, k]
                col = r * dimA + k
                for kk in range(dimA):
                    if vec[kk] != 0:
                        M[kk * n + i, col] = vec[kk]
    tau = TwistingMap(A=A, B=B, matrix=M, sigma=sigma, delta=delta)
    if linalg.inverse(F, M) is None:
        raise InternalInconsistency("constructed twisting map is singular")
    return tau


def verify_twisting_axioms(tau: TwistingMap) -> Report:
    """Unit conditions plus the hexagon relation on all basis 4-tuples."""
    rep = Report("twisting map axioms")
    F = tau.field
    A, B = tau.A, tau.B
    dA, n = A.dim, B.dim

    ok, witness = True, None
    for k in range(dA):
        expected = F.zeros(dA * n)
        expected[tau.ab_index(k, 0)] = F.one
        if not np.all(tau.apply_basis(0, k) == expected):
            ok, witness = False, ("1(x)a", k)
            break
    rep.add("tau(1 (x) a) = a (x) 1", ok, witness)

    ok, witness = True, None
    for r in range(n):
        expected = F.zeros(dA * n)
        expected[tau.ab_index(A.unit_index, r)] = F.one
        if not np.all(tau.apply_basis(r, A.unit_index) == expected):
            ok, witness = False, ("b(x)1", r)
            break
    rep.add("tau(b (x) 1) = 1 (x) b", ok, witness)

    rep.add("bijective", linalg.inverse(F, tau.matrix) is not None)

    # Hexagon: tau(m_B (x) m_A) = (m_A (x) m_B)(1 (x) tau (x) 1)(tau (x) tau)(1 (x) tau (x) 1)
    MmA = A.multiplication_matrix()
    MmB = B.multiplication_matrix()
    T = tau.matrix
    lhs = linalg.matmul(F, T, linalg.kron(F, MmB, MmA))
    step1 = linalg.kron(F, F.eye(n), T, F.eye(dA))
    step2 = linalg.kron(F, T, T)
    step3 = linalg.kron(F, F.eye(dA), T, F.eye(n))
    rhs = linalg.matmul(F, linalg.kron(F, MmA, MmB), linalg.matmul(F, step3, linalg.matmul(F, step2, step1)))
    if np.array_equal(lhs, rhs):
        rep.add("hexagon relation on all basis 4-tuples", True)
    else:
        col = int(np.argwhere(np.any(lhs != rhs, axis=0)).reshape(-1)[0])
        r1, rest = divmod(col, n * dA * dA)
        r2, rest = divmod(rest, dA * dA)
        k1, k2 = divmod(rest, dA)
        rep.add("hexagon relation on all basis 4-tuples", False, (r1, r2, k1, k2))
    return rep


def twisted_algebra(A: Algebra, B: Algebra, tau: TwistingMap) -> TwistedAlgebra:
    """Realize A (x)_tau B as an Algebra so all structure-constant tooling applies."""
    axioms = verify_twisting_axioms(tau)
    if not axioms.passed:
        bad = axioms.first_failure
        raise RejectedTwist(f"twisting axioms failed: {bad.name}", bad.witness)
    F = A.field
    dA, n = A.dim, B.dim
    dim = dA * n
    sc = F.zeros((dim, dim, dim))
    for k in range(dA):
        for i in range(n):
            row = tau.ab_index(k, i)
            for l in range(dA):
                for j in range(n):
                    col = tau.ab_index(l, j)
                    # (a_k (x) x^i)(a_l (x) x^j) = (m_A (x) m_B)(a_k (x) tau(x^i (x) a_l) (x) x^j)
                    mid = tau.apply_basis(i, l).reshape(dA, n)
                    out = F.zeros(dim)
                    for kk in range(dA):
                        for u in range(n):
                            c = mid[kk, u]
                            if c == 0:
                                continue
                            avec = A.sc[k, kk]
                            bvec = B.sc[u, j]
                            out = out + c * np.kron(avec, bvec)
                    sc[row, col] = F.reduce(out)
    labels = [
        f"{A.basis_labels[k]}(x){B.basis_labels[i]}"
        for k in range(dA)
        for i in range(n)
    ]
    product = Algebra(F, labels, sc, unit_index=tau.ab_index(A.unit_index, B.unit_index))
    return TwistedAlgebra(A=A, B=B, tau=tau, product=product)


def invert_tau(tau: TwistingMap) -> TwistingMapInverse:
    """Matrix inverse, certified on both sides."""
    F = tau.field
    inv = linalg.inverse(F, tau.matrix)
    if inv is None:
        raise InternalInconsistency("twisting map is singular")
    eye = F.eye(tau.matrix.shape[0])
    if not np.array_equal(linalg.matmul(F, inv, tau.matrix), eye) or not np.array_equal(
        linalg.matmul(F, tau.matrix, inv), eye
    ):
        raise InternalInconsistency("inverse certification failed")
    return TwistingMapInverse(tau=tau, matrix=inv)
