"""Finite-dimensional associative algebras by structure constants.

An Algebra is a basis, a dim x dim x dim table c[i,j,k] with
e_i e_j = sum_k c[i,j,k] e_k, and a distinguished unit basis element.
Nothing is trusted: associativity and the unit law are checked, never
assumed.  Linear operators on an algebra (automorphisms, sigma-derivations)
are square scalar matrices that earn a tag once their defining identity
has been verified on all basis pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .field import Field
from .report import Report


class Algebra:
    def __init__(self, field: Field, basis_labels, structure_constants, unit_index=0):
        self.field = field
        self.basis_labels = list(basis_labels)
        self.dim = len(self.basis_labels)
        sc = field.array(structure_constants)
        if sc.shape != (self.dim, self.dim, self.dim):
            raise ValueError("structure constant table has wrong shape")
        self.sc = sc
        self.unit_index = unit_index
        # Left/right multiplication matrices per basis element: the
        # workhorses for every certification loop.
        # L[i][k, j] = c[i, j, k]  (column j of L[i] is e_i * e_j).
        self.left_mul = [field.reduce(sc[i].T.copy()) for i in range(self.dim)]
        self.right_mul = [field.reduce(sc[:, j, :].T.copy()) for j in range(self.dim)]

    def __repr__(self):
        return f"Algebra(dim={self.dim}, char={self.field.char})"

    # -- elements -------------------------------------------------------

    def element(self, coeffs) -> "Element":
        vec = self.field.array(coeffs)
        if vec.shape != (self.dim,):
            raise ValueError("coefficient vector has wrong length")
        return Element(self, vec)

    def basis_element(self, i) -> "Element":
        vec = self.field.zeros(self.dim)
        vec[i] = self.field.one
        return Element(self, vec)

    @property
    def one(self) -> "Element":
        return self.basis_element(self.unit_index)

    @property
    def zero(self) -> "Element":
        return Element(self, self.field.zeros(self.dim))

    def mul_vec(self, u, v):
        """Product of two coefficient vectors."""
        # (u e)(v e) = sum_ij u_i v_j c[i,j,:]
        out = np.dot(np.dot(u, self.sc.reshape(self.dim, -1)).reshape(self.dim, self.dim).T, v)
        return self.field.reduce(out)

    def left_mul_matrix(self, u):
        """Matrix of left multiplication by the element with coefficients u."""
        M = sum(u[i] * self.left_mul[i] for i in range(self.dim))
        return self.field.reduce(M)

    def right_mul_matrix(self, u):
        M = sum(u[j] * self.right_mul[j] for j in range(self.dim))
        return self.field.reduce(M)

    def multiplication_matrix(self):
        """m: A (x) A -> A as a dim x dim^2 matrix, columns indexed i*dim+j."""
        d = self.dim
        M = self.field.zeros((d, d * d))
        for i in range(d):
            M[:, i * d:(i + 1) * d] = self.left_mul[i]
        return M

    def augmentation_vector(self):
        """The algebra map to k killing all non-unit basis monomials.

        Valid for the monomial-basis algebras built here (truncated
        polynomials and their twisted products), where the non-unit basis
        elements span a two-sided ideal.
        """
        v = self.field.zeros(self.dim)
        v[self.unit_index] = self.field.one
        return v


@dataclass
class Element:
    algebra: Algebra
    coeffs: np.ndarray

    def __mul__(self, other):
        return multiply(self, other)

    def __add__(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("algebra mismatch")
        return Element(self.algebra, self.algebra.field.reduce(self.coeffs + other.coeffs))

    def __sub__(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("algebra mismatch")
        return Element(self.algebra, self.algebra.field.reduce(self.coeffs - other.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and other.algebra is self.algebra
            and bool(np.all(other.coeffs == self.coeffs))
        )

    def is_zero(self):
        return linalg.is_zero(self.coeffs)

    def __repr__(self):
        terms = []
        F = self.algebra.field
        for i, c in enumerate(self.coeffs):
            if c != 0:
                label = self.algebra.basis_labels[i]
                terms.append(label if c == F.one else f"{F.render(c)}*{label}")
        return " + ".join(terms) if terms else "0"


def multiply(a: Element, b: Element) -> Element:
    """Bilinear product via structure constants."""
    if a.algebra is not b.algebra:
        raise ValueError("elements belong to different algebras")
    return Element(a.algebra, a.algebra.mul_vec(a.coeffs, b.coeffs))


@dataclass
class LinearOperator:
    """A scalar matrix acting on an algebra or module in its fixed basis.

    The tag records which verification the operator has passed; it is
    never set by construction alone.
    """

    field: Field
    matrix: np.ndarray
    tag: str = "untagged"

    @property
    def domain_dim(self):
        return self.matrix.shape[1]

    @property
    def codomain_dim(self):
        return self.matrix.shape[0]

    def __call__(self, vec):
        return self.field.reduce(np.dot(self.matrix, vec))

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        return LinearOperator(self.field, linalg.matmul(self.field, self.matrix, other.matrix))

    @staticmethod
    def identity(field, n, tag="untagged"):
        return LinearOperator(field, field.eye(n), tag)

    @staticmethod
    def zero(field, n):
        return LinearOperator(field, field.zeros((n, n)))


# -- constructions --------------------------------------------------------


def truncated_poly_algebra(field: Field, n: int, warn=None) -> Algebra:
    """k[x]/(x^n) with basis 1, x, ..., x^{n-1} in that fixed order."""
    if n < 1:
        raise ValueError(f"invalid dimension: truncation order must be >= 1, got {n}")
    if n == 1 and warn is not None:
        warn("truncation order 1 accepted for auxiliary use only")
    sc = field.zeros((n, n, n))
    one = field.one
    for i in range(n):
        for j in range(n):
            if i + j < n:
                sc[i, j, i + j] = one
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    return Algebra(field, labels, sc, unit_index=0)


def scalar_automorphism(alg: Algebra, q) -> LinearOperator:
    """x |-> q*x extended multiplicatively on a truncated polynomial algebra."""
    F = alg.field
    q = F.of(q)
    M = F.zeros((alg.dim, alg.dim))
    acc = F.one
    for i in range(alg.dim):
        M[i, i] = acc
        acc = F.reduce(acc * q)
    return LinearOperator(F, M)


def monomial_derivation(alg: Algebra, sigma: LinearOperator, dx) -> LinearOperator:
    """Extend delta from its value on x to all of k[x]/(x^n) by the Leibniz rule.

    dx is the coefficient vector of delta(x).  The builder derives the full
    matrix; callers re-verify with verify_sigma_derivation.
    """
    F = alg.field
    n = alg.dim
    M = F.zeros((n, n))
    dx = F.array(dx)
    if n >= 2:
        M[:, 1] = dx
        sx_left = alg.left_mul_matrix(sigma.matrix[:, 1])  # left mult by sigma(x)
        for i in range(2, n):
            # delta(x^i) = delta(x) * x^{i-1} + sigma(x) * delta(x^{i-1})
            prev = F.zeros(n)
            prev[i - 1] = F.one
            M[:, i] = F.reduce(
                np.dot(alg.right_mul_matrix(prev), dx) + np.dot(sx_left, M[:, i - 1])
            )
    return LinearOperator(F, M)


# -- certifications -------------------------------------------------------


def check_associativity(alg: Algebra) -> Report:
    """(e_i e_j) e_k == e_i (e_j e_k) on all basis triples, plus the unit law."""
    rep = Report(f"associativity of {alg!r}")
    F = alg.field
    d = alg.dim
    one = alg.one.coeffs
    unit_ok = True
    unit_witness = None
    for i in range(d):
        e = alg.basis_element(i).coeffs
        if not np.all(alg.mul_vec(one, e) == e) or not np.all(alg.mul_vec(e, one) == e):
            unit_ok, unit_witness = False, alg.basis_labels[i]
            break
    rep.add("unit acts as two-sided identity", unit_ok, unit_witness)

    # (e_i e_j) e_k : contract c over the middle index twice, both ways.
    sc = alg.sc
    left = F.reduce(np.tensordot(sc, sc, axes=([2], [0])))   # [i,j,k,m]
    right = F.reduce(np.tensordot(sc, sc, axes=([2], [1])))  # [j,k,i,m]
    right = right.transpose(2, 0, 1, 3)
    if np.array_equal(left, right):
        rep.add("associative on all basis triples", True)
    else:
        diff = np.argwhere(left != right)
        i, j, k, _ = diff[0]
        rep.add("associative on all basis triples", False, (int(i), int(j), int(k)))
    return rep


def verify_automorphism(alg: Algebra, sigma: LinearOperator) -> Report:
    """Invertible, unital, multiplicative on all basis pairs; tags on pass."""
    rep = Report("automorphism check")
    if sigma.matrix.shape != (alg.dim, alg.dim):
        raise ValueError("operator size does not match algebra dimension")
    F = alg.field
    inv = linalg.inverse(F, sigma.matrix)
    rep.add("invertible", inv is not None)
    rep.add("preserves unit", bool(np.all(sigma(alg.one.coeffs) == alg.one.coeffs)))
    ok, witness = True, None
    for i in range(alg.dim):
        si = sigma(alg.basis_element(i).coeffs)
        for j in range(alg.dim):
            lhs = sigma(alg.sc[i, j])
            rhs = alg.mul_vec(si, sigma(alg.basis_element(j).coeffs))
            if not np.all(lhs == rhs):
                ok, witness = False, (alg.basis_labels[i], alg.basis_labels[j])
                break
        if not ok:
            break
    rep.add("multiplicative on all basis pairs", ok, witness)
    if rep.passed:
        sigma.tag = "automorphism"
    return rep


def verify_sigma_derivation(alg: Algebra, sigma: LinearOperator, delta: LinearOperator) -> Report:
    """delta(1) = 0 and the sigma-Leibniz rule on all basis pairs; tags on pass."""
    if sigma.tag != "automorphism":
        raise ValueError("sigma must pass verify_automorphism first")
    rep = Report("sigma-derivation check")
    rep.add("vanishes on unit", linalg.is_zero(delta(alg.one.coeffs)))
    ok, witness = True, None
    for i in range(alg.dim):
        ei = alg.basis_element(i).coeffs
        di, si = delta(ei), sigma(ei)
        for j in range(alg.dim):
            ej = alg.basis_element(j).coeffs
            lhs = delta(alg.sc[i, j])
            rhs = alg.field.reduce(alg.mul_vec(di, ej) + alg.mul_vec(si, delta(ej)))
            if not np.all(lhs == rhs):
                ok, witness = False, (alg.basis_labels[i], alg.basis_labels[j])
                break
        if not ok:
            break
    rep.add("Leibniz rule on all basis pairs", ok, witness)
    if rep.passed:
        delta.tag = "derivation"
    return rep
