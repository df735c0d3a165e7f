"""Exact dense linear algebra over a Field.

Matrices are numpy arrays (int64 mod p, or object/Fraction).  Gaussian
elimination is done column by column with numpy-vectorized row updates,
which keeps F_p work fast while staying exact for rationals.
"""

from __future__ import annotations

import numpy as np


def matmul(field, A, B):
    return field.reduce(np.dot(A, B))


def is_zero(A) -> bool:
    return not np.any(A)


def rref(field, A):
    """Reduced row echelon form.

    Returns (R, pivots) where pivots is the list of pivot column indices.
    """
    R = np.array(A, copy=True)
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        pr = -1
        for i in range(r, m):
            if R[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        piv_inv = field.inv(R[r, c])
        R[r] = field.reduce(R[r] * piv_inv)
        col = R[:, c].copy()
        col[r] = field.zero
        if np.any(col):
            R -= np.outer(col, R[r])
            R = field.reduce(R)
        pivots.append(c)
        r += 1
    return R, pivots


def rank(field, A) -> int:
    if A.size == 0:
        return 0
    _, pivots = rref(field, A)
    return len(pivots)


def inverse(field, A):
    """Matrix inverse, or None if singular."""
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([A, field.eye(n)], axis=1)
    R, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return R[:, n:]


def solve(field, A, b):
    """Canonical solution x of A x = b (free variables zero), or None.

    The solution is the reduced-row-echelon one: pivot variables take the
    reduced right-hand side, every free variable is zero.  Deterministic.
    """
    m, n = A.shape
    b = b.reshape(m, 1) if b.ndim == 1 else b
    aug = np.concatenate([A, b], axis=1)
    R, pivots = rref(field, aug)
    if any(p >= n for p in pivots):
        return None
    x = field.zeros(n)
    for i, p in enumerate(pivots):
        x[p] = R[i, n]
    return x


def kron(field, *mats):
    out = mats[0]
    for M in mats[1:]:
        out = np.kron(out, M)
    return field.reduce(out)
