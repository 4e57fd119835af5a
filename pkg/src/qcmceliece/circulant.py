"""Circulant matrices over GF(2^l) and the number theory behind them.

A p×p circulant is stored by its first row; row i of the expansion is the
first row cyclically shifted i places to the right.  The ring of circulants
is isomorphic to GF(2^l)[x]/(x^p - 1) via first row -> coefficient vector,
so multiplication is a cyclic convolution of first rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotFoundError, ParameterError
from .field import gf
from .linalg import format_vector, parse_vector, rank


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def multiplicative_order(g: int, p: int) -> int:
    g %= p
    if g == 0:
        raise ParameterError(f"{g} is not a unit mod {p}")
    x, k = g, 1
    while x != 1:
        x = x * g % p
        k += 1
    return k


def is_primitive_root(g: int, p: int) -> bool:
    """True iff g has multiplicative order p - 1 modulo the prime p."""
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    if not 1 <= g < p:
        raise ParameterError(f"need 1 <= g < p, got g={g}, p={p}")
    return multiplicative_order(g, p) == p - 1


def find_special_prime(min_value: int, limit: int = 10**7) -> int:
    """Smallest prime p >= min_value with (p - 1)/4 also prime.

    For such p, 2 is a primitive root mod p, so the p-th cyclotomic
    polynomial is irreducible over GF(2).
    """
    if min_value < 5:
        raise ParameterError("min_value must be at least 5")
    p = min_value + (1 - min_value) % 4  # first p ≡ 1 (mod 4)
    while p <= limit:
        if is_prime(p) and is_prime((p - 1) // 4):
            return p
        p += 4
    raise NotFoundError(f"no p = 4q + 1 with p, q prime in [{min_value}, {limit}]")


@dataclass(frozen=True, eq=False)
class Circulant:
    first_row: np.ndarray
    l: int = 1

    def __post_init__(self):
        row = np.array(self.first_row, dtype=np.int64)
        if row.ndim != 1 or row.size < 1:
            raise DimensionError("first row must be a non-empty vector")
        if row.min() < 0 or row.max() >= 1 << self.l:
            raise ParameterError(f"entries outside GF(2^{self.l})")
        row.setflags(write=False)
        object.__setattr__(self, "first_row", row)

    @property
    def p(self) -> int:
        return self.first_row.size

    @classmethod
    def identity(cls, p: int, l: int = 1) -> Circulant:
        row = np.zeros(p, dtype=np.int64)
        row[0] = 1
        return cls(row, l)

    @classmethod
    def shift(cls, p: int, l: int = 1) -> Circulant:
        """The p-cycle matrix: row i has its 1 in column i + 1."""
        row = np.zeros(p, dtype=np.int64)
        row[1 % p] = 1
        return cls(row, l)

    @classmethod
    def from_first_column(cls, column, l: int = 1) -> Circulant:
        col = np.asarray(column, dtype=np.int64)
        # entry (i, 0) = first_row[-i mod p]
        return cls(np.roll(col[::-1], 1), l)

    @property
    def first_column(self) -> np.ndarray:
        return np.roll(self.first_row[::-1], 1)

    def expand(self) -> np.ndarray:
        p = self.p
        idx = (np.arange(p)[None, :] - np.arange(p)[:, None]) % p
        return self.first_row[idx]

    def _check(self, other: Circulant) -> None:
        if self.p != other.p or self.l != other.l:
            raise DimensionError(f"circulant mismatch: p={self.p}, l={self.l} vs p={other.p}, l={other.l}")

    def __add__(self, other: Circulant) -> Circulant:
        self._check(other)
        return Circulant(self.first_row ^ other.first_row, self.l)

    def __mul__(self, other: Circulant) -> Circulant:
        self._check(other)
        F = gf(self.l)
        p = self.p
        out = np.zeros(p, dtype=np.int64)
        for i in np.nonzero(self.first_row)[0]:
            out ^= F.mul(int(self.first_row[i]), np.roll(other.first_row, int(i)))
        return Circulant(out, self.l)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circulant):
            return NotImplemented
        return self.l == other.l and np.array_equal(self.first_row, other.first_row)

    def __hash__(self) -> int:
        return hash((self.l, self.first_row.tobytes()))

    def weight(self) -> int:
        return int(np.count_nonzero(self.first_row))

    def format(self) -> str:
        return f"{self.p} {self.l}\n{format_vector(self.first_row, self.l)}\n"

    @classmethod
    def parse(cls, text: str) -> Circulant:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        p, l = (int(x) for x in lines[0].split())
        row = parse_vector(lines[1], l)
        if row.size != p:
            raise ParameterError(f"expected {p} entries, got {row.size}")
        return cls(row, l)


def circ_expand(c: Circulant) -> np.ndarray:
    return c.expand()


def circ_mul(a: Circulant, b: Circulant) -> Circulant:
    return a * b


def crt_applicable(c: Circulant) -> bool:
    return c.l == 1 and is_prime(c.p) and c.p > 2 and is_primitive_root(2, c.p)


def circ_is_invertible(c: Circulant, method: str = "rank") -> bool:
    """Whether the circulant has full rank.

    ``method="rank"`` always works.  ``method="crt"`` applies over GF(2)
    when 2 is a primitive root mod the prime p: then
    GF(2)[x]/(x^p - 1) ≅ GF(2) × GF(2)[x]/Φ_p with both factors fields, so
    the circulant is a unit iff its row weight is odd and its row
    polynomial is not a multiple of Φ_p (the only nonzero such multiple is
    the all-ones row).  ``method="auto"`` uses crt when it applies.
    """
    if method == "auto":
        method = "crt" if crt_applicable(c) else "rank"
    if method == "rank":
        return rank(c.expand(), c.l) == c.p
    if method == "crt":
        if not crt_applicable(c):
            raise ParameterError("CRT criterion needs l=1, p prime and 2 primitive mod p")
        w = c.weight()
        return w % 2 == 1 and w != c.p
    raise ParameterError(f"unknown method {method!r}")
