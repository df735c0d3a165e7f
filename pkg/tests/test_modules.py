"""Module compatibility: phi certification, tau_{B,M}, tensor actions."""

import numpy as np
import pytest

from orecert.algebra import (
    monomial_derivation,
    scalar_automorphism,
    truncated_poly_algebra,
    verify_automorphism,
    verify_sigma_derivation,
)
from orecert.field import Field
from orecert.modules import (
    RejectedCompat,
    TTPModule,
    build_tau_BM,
    tensor_module_action,
    verify_compatibility,
    verify_module_axioms,
    verify_phi,
)
from orecert.twist import build_tau, twisted_algebra


def _setup(p=5, t=2, alpha=1):
    F = Field(p)
    A = truncated_poly_algebra(F, p, warn=lambda _m: None)
    sigma = scalar_automorphism(A, 1)
    verify_automorphism(A, sigma).require()
    dx = F.zeros(p)
    dx[t] = F.of(alpha)
    delta = monomial_derivation(A, sigma, dx)
    verify_sigma_derivation(A, sigma, delta).require()
    tau = build_tau(A, sigma, delta, p)
    T = twisted_algebra(A, tau.B, tau)
    return F, A, sigma, delta, tau, T


def test_trivial_module_compatible():
    F, A, sigma, delta, tau, T = _setup()
    p = 5
    # M = k: A acts through the augmentation, x acts by zero
    action_A = [F.array([[1 if k == 0 else 0]]) for k in range(p)]
    f = F.zeros((1, 1))
    phi = F.eye(1)
    assert verify_phi(action_A, phi, sigma, F).passed
    cm = build_tau_BM(A, action_A, f, phi, p)
    assert verify_compatibility(cm, tau).passed


def test_regular_module_recovers_tau():
    F, A, sigma, delta, tau, T = _setup()
    p = 5
    action_A = [A.left_mul_matrix(A.basis_element(k).coeffs) for k in range(p)]
    cm = build_tau_BM(A, action_A, delta.matrix, sigma.matrix, p)
    assert verify_compatibility(cm, tau).passed
    # tau_{B,A} on the regular module is tau itself
    assert np.array_equal(cm.matrix, tau.matrix)


def test_corrupted_table_fails_with_witness():
    F, A, sigma, delta, tau, T = _setup(p=3)
    action_A = [A.left_mul_matrix(A.basis_element(k).coeffs) for k in range(3)]
    cm = build_tau_BM(A, action_A, delta.matrix, sigma.matrix, 3)
    cm.matrix[4, 4] = F.reduce(cm.matrix[4, 4] + 1)
    rep = verify_compatibility(cm, tau)
    assert not rep.passed
    assert rep.first_failure.witness is not None


def test_incompatible_f_rejected():
    # over Q with n = 2, the interior condition s_(1,1)(phi, f) = 2f != 0
    from orecert.algebra import truncated_poly_algebra

    F = Field(0)
    A = truncated_poly_algebra(F, 2, warn=lambda _m: None)
    action_A = [F.array([[1 if k == 0 else 0]]) for k in range(2)]
    f = F.array([[1]])
    with pytest.raises(RejectedCompat):
        build_tau_BM(A, action_A, f, F.eye(1), 2)


def test_tensor_module_action_regular():
    F, A, sigma, delta, tau, T = _setup(p=3)
    p = 3
    action_A = [A.left_mul_matrix(A.basis_element(k).coeffs) for k in range(p)]
    cm = build_tau_BM(A, action_A, delta.matrix, sigma.matrix, p)
    B = tau.B
    action_B = [B.left_mul_matrix(B.basis_element(r).coeffs) for r in range(p)]
    MN = tensor_module_action(T, cm, action_B, p)
    assert verify_module_axioms(MN).passed
    # A (x) B with both regular structures is the left regular module of T
    for idx in range(T.product.dim):
        expected = T.product.left_mul_matrix(T.product.basis_element(idx).coeffs)
        assert np.array_equal(MN.action[idx], expected)


def test_tensor_with_trivial_N_restricts_to_A_side():
    F, A, sigma, delta, tau, T = _setup(p=3)
    p = 3
    action_A = [A.left_mul_matrix(A.basis_element(k).coeffs) for k in range(p)]
    cm = build_tau_BM(A, action_A, delta.matrix, sigma.matrix, p)
    action_B = [F.array([[1 if r == 0 else 0]]) for r in range(p)]
    MN = tensor_module_action(T, cm, action_B, 1)
    assert MN.dim == p
    # a (x) 1 acts on A (x) k = A by left multiplication
    for k in range(p):
        idx = k * p + 0
        assert np.array_equal(MN.action[idx], action_A[k])
