"""Noncommutative symmetrization of two operators.

shuffle_operator(i, j, F, G) is the sum, over all words with i letters F
and j letters G, of the composition of the word read left to right (so the
word FGG acts as F o G o G).  There are binomial(i+j, i) words.  The map
vanishing at total degree n is exactly what lets a twisting map descend to
the truncation quotient.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .algebra import LinearOperator
from .report import Report

# Beyond this total degree the word list explodes; use the recursion.
_ENUMERATION_LIMIT = 12


def _check_pair(F, G):
    if F.matrix.shape != G.matrix.shape or F.matrix.shape[0] != F.matrix.shape[1]:
        raise ValueError("operators must be square and of equal size")


def shuffle_words(i: int, j: int):
    """All 0/1 words with i ones (first operator) and j zeros, lexicographic."""
    length = i + j
    words = []
    for ones in combinations(range(length), i):
        w = [0] * length
        for pos in ones:
            w[pos] = 1
        words.append(tuple(w))
    words.sort(reverse=True)  # lexicographic over bit-strings, 1 = first operator
    return words

def shuffle_operator_enumerated(i, j, F: LinearOperator, G: LinearOperator) -> LinearOperator:
    """Oracle form: explicit sum over all words."""
    _check_pair(F, G)
    fld = F.field
    n = F.matrix.shape[0]
    if i < 0 or j < 0:
        return LinearOperator.zero(fld, n)
    total = fld.zeros((n, n))
    for w in shuffle_words(i, j):
        acc = fld.eye(n)
        for letter in w:
            acc = linalg.matmul(fld, acc, F.matrix if letter else G.matrix)
        total = fld.reduce(total + acc)
    return LinearOperator(fld, total)


def _shuffle_recursive(i, j, F, G, memo):
    fld = F.field
    n = F.matrix.shape[0]
    if i < 0 or j < 0:
        return fld.zeros((n, n))
    if i == 0 and j == 0:
        return fld.eye(n)
    key = (i, j)
    if key not in memo:
        # s(i,j) = F o s(i-1,j) + G o s(i,j-1)
        left = _shuffle_recursive(i - 1, j, F, G, memo)
        right = _shuffle_recursive(i, j - 1, F, G, memo)
        memo[key] = fld.reduce(np.dot(F.matrix, left) + np.dot(G.matrix, right))
    return memo[key]


def shuffle_operator(i, j, F: LinearOperator, G: LinearOperator) -> LinearOperator:
    """s_{(i,j)}(F, G); the -1 index conventions give the zero operator."""
    _check_pair(F, G)
    if i < 0 or j < 0:
        return LinearOperator.zero(F.field, F.matrix.shape[0])
    if i + j <= _ENUMERATION_LIMIT:
        return shuffle_operator_enumerated(i, j, F, G)
    return LinearOperator(F.field, _shuffle_recursive(i, j, F, G, {}))


def shuffle_family(n, F: LinearOperator, G: LinearOperator):
    """All s_{(i,j)} with i + j <= n, memoized in one sweep.

    Returns a dict (i, j) -> matrix.
    """
    _check_pair(F, G)
    memo = {}
    for total in range(n + 1):
        for i in range(total + 1):
            _shuffle_recursive(i, total - i, F, G, memo)
    memo[(0, 0)] = F.field.eye(F.matrix.shape[0])
    return memo


def verify_truncation_conditions(sigma: LinearOperator, delta: LinearOperator, n: int) -> Report:
    """s_{(i,j)}(sigma, delta) = 0 for i + j = n, 0 <= i <= n-1, 1 <= j <= n.

    This is the gate for a twisting map on the degree-n truncation.  The
    report records the exact index range checked (the module-compatibility
    analog checks a smaller range, with the extremes automatic).
    """
    if sigma.tag != "automorphism":
        raise ValueError("sigma must pass verify_automorphism first")
    if delta.tag != "derivation":
        raise ValueError("delta must pass verify_sigma_derivation first")
    rep = Report(f"truncation vanishing at total degree {n}")
    rep.add("index range", True, f"i in [0,{n - 1}], j in [1,{n}], i+j={n}")
    fam = shuffle_family(n, sigma, delta)
    for i in range(0, n):
        j = n - i
        M = fam[(i, j)]
        if linalg.is_zero(M):
            rep.add(f"s_({i},{j}) = 0", True)
        else:
            nz = np.argwhere(np.any(M != 0, axis=0)).reshape(-1)
            rep.add(f"s_({i},{j}) = 0", False, ("basis index", int(nz[0])))
    return rep
