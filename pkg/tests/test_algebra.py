"""Structure-constant algebras, automorphisms, and sigma-derivations."""

import numpy as np
import pytest

from orecert.algebra import (
    Algebra,
    check_associativity,
    monomial_derivation,
    scalar_automorphism,
    truncated_poly_algebra,
    verify_automorphism,
    verify_sigma_derivation,
)
from orecert.field import Field


def _trunc(F, n):
    return truncated_poly_algebra(F, n, warn=lambda _m: None)


def test_truncated_poly_multiplication_frozen():
    F = Field(3)
    A = _trunc(F, 3)
    one_plus_x = A.element(F.array([1, 1, 0]))
    sq = one_plus_x * one_plus_x
    # (x+1)^2 = x^2 + 2x + 1 in F_3[x]/(x^3)
    assert np.array_equal(sq.coeffs, F.array([1, 2, 1]))
    # truncation: x^2 * x^2 = 0
    x2 = A.basis_element(2)
    assert (x2 * x2).is_zero()


def test_associativity_pass_and_mutation_witness():
    F = Field(5)
    A = _trunc(F, 4)
    assert check_associativity(A).passed
    sc = A.sc.copy()
    sc[1, 1, 0] = F.one  # corrupt x*x with a unit term
    bad = Algebra(F, A.basis_labels, sc, unit_index=0)
    rep = check_associativity(bad)
    assert not rep.passed
    assert rep.first_failure.witness is not None  # (i, j, k) of the first failing triple


def test_scalar_automorphism():
    F = Field(5)
    A = _trunc(F, 5)
    sigma = scalar_automorphism(A, 2)
    assert verify_automorphism(A, sigma).passed
    # sigma(x^i) = 2^i x^i
    assert sigma.matrix[3, 3] == F.of(8)
    # q = 0 is not invertible
    degenerate = scalar_automorphism(A, 0)
    assert not verify_automorphism(A, degenerate).passed


def test_monomial_derivation_frozen():
    F = Field(5)
    A = _trunc(F, 5)
    sigma = scalar_automorphism(A, 1)
    verify_automorphism(A, sigma).require()
    dx = F.zeros(5)
    dx[2] = F.one  # delta(x) = x^2
    delta = monomial_derivation(A, sigma, dx)
    rep = verify_sigma_derivation(A, sigma, delta)
    assert rep.passed
    # delta(x^2) = 2x^3 by the Leibniz rule
    e2 = F.zeros(5)
    e2[2] = F.one
    out = delta(e2)
    expected = F.zeros(5)
    expected[3] = F.of(2)
    assert np.array_equal(out, expected)


def test_broken_derivation_rejected_with_witness():
    F = Field(5)
    A = _trunc(F, 5)
    sigma = scalar_automorphism(A, 1)
    verify_automorphism(A, sigma).require()
    dx = F.zeros(5)
    dx[2] = F.one
    delta = monomial_derivation(A, sigma, dx)
    delta.matrix[4, 2] = F.of(3)  # break Leibniz on a basis pair
    rep = verify_sigma_derivation(A, sigma, delta)
    assert not rep.passed
    assert rep.first_failure.witness is not None


def test_derivation_requires_certified_sigma():
    F = Field(5)
    A = _trunc(F, 5)
    sigma = scalar_automorphism(A, 1)  # never certified: no tag
    dx = F.zeros(5)
    dx[2] = F.one
    delta = monomial_derivation(A, sigma, dx)
    with pytest.raises(ValueError):
        verify_sigma_derivation(A, sigma, delta)
