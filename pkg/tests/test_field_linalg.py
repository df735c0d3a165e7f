"""Exact field arithmetic and the hand-rolled linear algebra kernel."""

from fractions import Fraction

import numpy as np
import pytest

from orecert import linalg
from orecert.field import Field


def test_prime_field_canonical_form():
    F = Field(5)
    assert F.of(7) == 2
    assert F.of(-1) == 4
    assert F.inv(2) == 3  # 2*3 = 6 = 1 mod 5
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_rational_field_exactness():
    F = Field(0)
    a = F.of(Fraction(1, 3))
    assert a + a + a == 1
    assert F.inv(Fraction(2, 7)) == Fraction(7, 2)


def test_nonprime_char_rejected():
    with pytest.raises(ValueError):
        Field(6)


def test_render_parse_round_trip():
    Fq = Field(0)
    for v in [Fraction(0), Fraction(-3, 7), Fraction(12)]:
        assert Fq.parse(Fq.render(v)) == v
    Fp = Field(7)
    for v in range(7):
        assert Fp.parse(Fp.render(v)) == v


def test_rref_and_rank_frozen():
    F = Field(5)
    # rows 2 and 3 are multiples of row 1: rank 1
    A = F.array([[1, 2, 3], [2, 4, 6], [3, 6, 9]])
    R, pivots = linalg.rref(F, A)
    assert pivots == [0]
    assert linalg.rank(F, A) == 1
    # generic 3x3 over F_5, det = 1 by construction (frozen)
    B = F.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert linalg.rank(F, B) == 3


def test_rank_product_bound_random():
    rng = np.random.default_rng(7)
    F = Field(5)
    for _ in range(25):
        r = int(rng.integers(0, 4))
        L = F.array(rng.integers(0, 5, size=(6, r)))
        R = F.array(rng.integers(0, 5, size=(r, 6)))
        assert linalg.rank(F, linalg.matmul(F, L, R)) <= r


def test_inverse_and_solve():
    F = Field(7)
    A = F.array([[2, 1], [5, 3]])  # det = 1 mod 7
    Ainv = linalg.inverse(F, A)
    assert np.array_equal(linalg.matmul(F, A, Ainv), F.eye(2))
    b = F.array([1, 4])
    x = linalg.solve(F, A, b)
    assert np.array_equal(F.reduce(A.dot(x)), b)
    # singular system, consistent: canonical solution has free variables zero
    S = F.array([[1, 2], [2, 4]])
    x = linalg.solve(F, S, F.array([3, 6]))
    assert x is not None and x[1] == 0
    # inconsistent
    assert linalg.solve(F, S, F.array([3, 5])) is None
    assert linalg.inverse(F, S) is None


def test_rational_solve_exact():
    F = Field(0)
    A = F.array([[Fraction(1, 2), 1], [1, Fraction(1, 3)]])
    b = F.array([1, 1])
    x = linalg.solve(F, A, b)
    assert np.array_equal(A.dot(x), b)
