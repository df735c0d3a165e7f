"""Modules over a twisted product and their compatibility maps.

A module is a list of action matrices, one per algebra basis element,
with the module axioms checked on basis pairs rather than assumed.  The
compatibility map tau_{B,M}: B (x) M -> M (x) B is built from an
A-module isomorphism phi: M -> M^sigma and the action of the truncated
generator, by the same shuffle expansion that builds the twisting map.
Index order: B (x) M is B-major (r*dim(M) + m), M (x) B is M-major.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import Algebra, LinearOperator
from .report import Report
from .shuffle import shuffle_family
from .twist import TwistedAlgebra, TwistingMap


class RejectedCompat(Exception):
    """The module-side shuffle vanishing conditions failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class TTPModule:
    algebra: Algebra
    dim: int
    action: list  # one matrix per algebra basis element

    def act(self, coeffs):
        """Action matrix of an arbitrary algebra element."""
        F = self.algebra.field
        M = F.zeros((self.dim, self.dim))
        for i, c in enumerate(coeffs):
            if c != 0:
                M = M + c * self.action[i]
        return F.reduce(M)

    def rho_matrix(self):
        """rho: A (x) M -> M as a dim(M) x (dim(A)*dim(M)) matrix."""
        F = self.algebra.field
        d = self.algebra.dim
        M = F.zeros((self.dim, d * self.dim))
        for i in range(d):
            M[:, i * self.dim:(i + 1) * self.dim] = self.action[i]
        return M


def verify_module_axioms(mod: TTPModule) -> Report:
    """Unit acts as identity; action respects all structure constants."""
    rep = Report("module axioms")
    alg = mod.algebra
    F = alg.field
    if mod.dim == 0:
        rep.add("zero module (vacuous)", True)
        return rep
    rep.add(
        "unit acts as identity",
        np.array_equal(mod.action[alg.unit_index], F.eye(mod.dim)),
    )
    ok, witness = True, None
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = linalg.matmul(F, mod.action[i], mod.action[j])
            rhs = mod.act(alg.sc[i, j])
            if not np.array_equal(lhs, rhs):
                ok, witness = False, (alg.basis_labels[i], alg.basis_labels[j])
                break
        if not ok:
            break
    rep.add("compatible with structure constants", ok, witness)
    return rep


def module_from_generator_actions(twisted: TwistedAlgebra, dim, act_first, act_second) -> TTPModule:
    """Derive all basis-element actions from the two generator actions.

    act_first is the action of x1 (x) 1, act_second of 1 (x) x2; the basis
    element a_k (x) x2^i then acts as act_first^k act_second^i.  Requires
    the left factor to be a truncated polynomial algebra (monomial basis).
    The resulting module is re-verified against the full axiom set.
    """
    F = twisted.product.field
    dA, n = twisted.A.dim, twisted.B.dim
    act_first = F.array(act_first)
    act_second = F.array(act_second)
    pow1 = [F.eye(dim)]
    for _ in range(1, dA):
        pow1.append(linalg.matmul(F, pow1[-1], act_first))
    pow2 = [F.eye(dim)]
    for _ in range(1, n):
        pow2.append(linalg.matmul(F, pow2[-1], act_second))
    action = [
        linalg.matmul(F, pow1[k], pow2[i]) for k in range(dA) for i in range(n)
    ]
    mod = TTPModule(algebra=twisted.product, dim=dim, action=action)
    verify_module_axioms(mod).require()
    return mod


@dataclass
class CompatMap:
    """tau_{B,M} together with the data it was built from."""

    A: Algebra
    n: int
    action_A: list  # restriction of the module to A (one matrix per A basis elt)
    f: np.ndarray  # action of the truncated generator on M
    phi: np.ndarray
    matrix: np.ndarray  # (dimM*n) x (n*dimM): B (x) M -> M (x) B

    @property
    def dim_M(self):
        return self.f.shape[0]

    @property
    def field(self):
        return self.A.field

    def apply_basis(self, r, m):
        return self.matrix[:, r * self.dim_M + m]


def verify_phi(action_A, phi, sigma: LinearOperator, field) -> Report:
    """phi invertible and phi(a.m) = sigma(a).phi(m) on all basis pairs."""
    rep = Report("module isomorphism M -> M^sigma")
    phi = field.array(phi)
    rep.add("invertible", linalg.inverse(field, phi) is not None)
    ok, witness = True, None
    dim_M = phi.shape[0]
    for i in range(len(action_A)):
        lhs = linalg.matmul(field, phi, action_A[i])
        s_ei = sigma.matrix[:, i]
        rhs_op = field.zeros((dim_M, dim_M))
        for k, c in enumerate(s_ei):
            if c != 0:
                rhs_op = rhs_op + c * action_A[k]
        rhs = linalg.matmul(field, field.reduce(rhs_op), phi)
        if not np.array_equal(lhs, rhs):
            ok, witness = False, ("A basis index", i)
            break
    rep.add("intertwines the twisted action", ok, witness)
    return rep


def build_tau_BM(A: Algebra, action_A, f, phi, n: int) -> CompatMap:
    """Compatibility map via the shuffle expansion of (phi, x-action).

    Gate: s_{(i,j)}(phi, f) = 0 for i + j = n with 1 <= i, j <= n-1.  The
    extreme indices i = 0 and j = n vanish automatically on the quotient,
    so they are reported as automatic, not checked.
    """
    F = A.field
    f = F.array(f)
    phi = F.array(phi)
    dim_M = f.shape[0]
    P = LinearOperator(F, phi)
    Xact = LinearOperator(F, f)
    fam = shuffle_family(n, P, Xact)
    for i in range(1, n):
        j = n - i
        if 1 <= j <= n - 1 and not linalg.is_zero(fam[(i, j)]):
            raise RejectedCompat(f"s_({i},{j})(phi, x-action) != 0", (i, j))
    M = F.zeros((dim_M * n, n * dim_M))
    for r in range(n):
        for i in range(r + 1):
            s_ij = fam[(i, r - i)]
            for m in range(dim_M):
                vec = s_ij[:, m]
                col = r * dim_M + m
                for mm in range(dim_M):
                    if vec[mm] != 0:
                        M[mm * n + i, col] = vec[mm]
    cm = CompatMap(A=A, n=n, action_A=list(action_A), f=f, phi=phi, matrix=M)
    if linalg.inverse(F, M) is None:
        raise RejectedCompat("compatibility map is singular")
    return cm


def verify_compatibility(cm: CompatMap, tau: TwistingMap) -> Report:
    """Relations (2.11) and (2.12), exhaustively on basis tuples."""
    rep = Report("module compatibility with the twisting map")
    F = cm.field
    n, dM, dA = cm.n, cm.dim_M, cm.A.dim
    if dM == 0:
        rep.add("zero module (vacuous)", True)
        return rep
    B = tau.B
    T = cm.matrix

    # flip on 1 (x) M
    ok = all(
        np.array_equal(cm.apply_basis(0, m), _unit_vec(F, dM * n, m * n))
        for m in range(dM)
    )
    rep.add("restricts to the flip on 1 (x) M", ok)

    rep.add("bijective", linalg.inverse(F, T) is not None)

    # (2.11): tau_BM (m_B (x) 1) = (1 (x) m_B)(tau_BM (x) 1)(1 (x) tau_BM)
    MmB = B.multiplication_matrix()
    lhs = linalg.matmul(F, T, linalg.kron(F, MmB, F.eye(dM)))
    rhs = linalg.matmul(
        F,
        linalg.kron(F, F.eye(dM), MmB),
        linalg.matmul(F, linalg.kron(F, T, F.eye(n)), linalg.kron(F, F.eye(n), T)),
    )
    if np.array_equal(lhs, rhs):
        rep.add("relation (B-multiplicativity) on all basis tuples", True)
    else:
        col = int(np.argwhere(np.any(lhs != rhs, axis=0)).reshape(-1)[0])
        r1, rest = divmod(col, n * dM)
        r2, m = divmod(rest, dM)
        rep.add("relation (B-multiplicativity) on all basis tuples", False, (r1, r2, m))

    # (2.12): tau_BM (1 (x) rho) = (rho (x) 1)(1 (x) tau_BM)(tau (x) 1)
    rho = TTPModule(algebra=cm.A, dim=dM, action=cm.action_A).rho_matrix()
    lhs = linalg.matmul(F, T, linalg.kron(F, F.eye(n), rho))
    rhs = linalg.matmul(
        F,
        linalg.kron(F, rho, F.eye(n)),
        linalg.matmul(
            F, linalg.kron(F, F.eye(dA), T), linalg.kron(F, tau.matrix, F.eye(dM))
        ),
    )
    if np.array_equal(lhs, rhs):
        rep.add("relation (A-equivariance) on all basis tuples", True)
    else:
        col = int(np.argwhere(np.any(lhs != rhs, axis=0)).reshape(-1)[0])
        r, rest = divmod(col, dA * dM)
        k, m = divmod(rest, dM)
        rep.add("relation (A-equivariance) on all basis tuples", False, (r, k, m))
    return rep


def tensor_module_action(twisted: TwistedAlgebra, cm: CompatMap, action_B, dim_N) -> TTPModule:
    """M (x) N as a module over the twisted product, certified.

    cm carries M (an A-module compatible with tau); action_B is the list
    of action matrices of the B basis on N.  Index order on M (x) N is
    M-major.
    """
    rep = verify_compatibility(cm, twisted.tau)
    if not rep.passed:
        raise RejectedCompat("compatibility map not verified", rep.first_failure)
    F = twisted.product.field
    dA, n = twisted.A.dim, twisted.B.dim
    dM = cm.dim_M
    dMN = dM * dim_N
    rhoN = F.zeros((dim_N, n * dim_N))
    for b in range(n):
        rhoN[:, b * dim_N:(b + 1) * dim_N] = action_B[b]
    action = []
    for k in range(dA):
        actA = TTPModule(algebra=cm.A, dim=dM, action=cm.action_A).act(
            twisted.A.basis_element(k).coeffs
        )
        for i in range(n):
            # (a_k (x) x^i).(m (x) w): push x^i past m with tau_BM, then act.
            S_i = cm.matrix[:, i * dM:(i + 1) * dM]  # M -> M (x) B
            step1 = linalg.kron(F, S_i, F.eye(dim_N))
            step2 = linalg.kron(F, actA, rhoN)
            action.append(linalg.matmul(F, step2, step1))
    mod = TTPModule(algebra=twisted.product, dim=dMN, action=action)
    verify_module_axioms(mod).require()
    return mod


def _unit_vec(F, size, idx):
    v = F.zeros(size)
    v[idx] = F.one
    return v
