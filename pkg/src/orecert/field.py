"""Exact scalar arithmetic: prime fields F_p and the rationals.

Scalars are plain Python values: ints in [0, p) for characteristic p,
Fraction for characteristic 0.  A Field object canonicalizes, inverts,
parses and renders them.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The ground field: F_p for prime p, or Q when char == 0."""

    def __init__(self, char: int):
        if char != 0 and not _is_prime(char):
            raise ValueError(f"characteristic must be 0 or prime, got {char}")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return f"Field({self.char})"

    # -- scalar construction ------------------------------------------------

    def of(self, v):
        """Canonicalize an int / Fraction / scalar into this field."""
        if self.char:
            return int(v) % self.char
        return Fraction(v)

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def inv(self, a):
        if self.char:
            a = int(a) % self.char
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, self.char - 2, self.char)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / Fraction(a)

    # -- array plumbing -----------------------------------------------------

    @property
    def dtype(self):
        return np.int64 if self.char else object

    def array(self, data):
        """Build a canonical numpy array of scalars."""
        if self.char:
            return np.array(data, dtype=np.int64) % self.char
        arr = np.array(data, dtype=object)
        flat = arr.reshape(-1)
        for i in range(flat.shape[0]):
            flat[i] = Fraction(flat[i])
        return arr

    def zeros(self, shape):
        if self.char:
            return np.zeros(shape, dtype=np.int64)
        arr = np.empty(shape, dtype=object)
        arr[...] = Fraction(0)
        return arr

    def eye(self, n):
        if self.char:
            return np.eye(n, dtype=np.int64)
        arr = self.zeros((n, n))
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr

    def reduce(self, arr):
        """Bring an array back to canonical form after arithmetic."""
        if self.char:
            return arr % self.char
        return arr

    # -- text round trip ----------------------------------------------------

    def render(self, a) -> str:
        if self.char:
            return str(int(a) % self.char)
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, s: str):
        s = s.strip()
        if self.char:
            return int(s) % self.char
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
