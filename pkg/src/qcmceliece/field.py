"""Arithmetic in GF(2^l), 1 <= l <= 16.

Elements are l-bit integers in the polynomial basis: bit i holds the
coefficient of x^i.  Each degree has one fixed reduction polynomial so
that serialized keys mean the same thing everywhere.

Scalar arithmetic goes through :class:`FieldElement` (or the ``fe_*``
functions); the matrix kernels use the vectorized methods of :class:`GF`,
which work on numpy integer arrays through log/antilog tables.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DegreeMismatchError, FieldDivisionError, ParameterError

# Reduction polynomials, bit i = coefficient of x^i.
MODULI = {
    1: 0b11,  # GF(2); products never need reducing
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0x11B,  # x^8 + x^4 + x^3 + x + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}

MAX_DEGREE = 16


def clmul_mod(a: int, b: int, modulus: int) -> int:
    """Schoolbook carry-less multiply of a and b, reduced by ``modulus``.

    Table free; used to build and cross-check the log tables.
    """
    deg = modulus.bit_length() - 1
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if deg > 0 and a >> deg & 1:
            a ^= modulus
    return result


def hex_width(l: int) -> int:
    return (l + 3) // 4


class GF:
    """The field GF(2^l) with precomputed exp/log tables.

    Instances are immutable after construction; get them through
    :func:`gf` so that each degree is built once.
    """

    def __init__(self, l: int):
        if not 1 <= l <= MAX_DEGREE:
            raise ParameterError(f"extension degree must be in 1..{MAX_DEGREE}, got {l}")
        self.l = l
        self.q = 1 << l
        self.order = self.q - 1
        self.modulus = MODULI[l]
        self.generator = self._find_generator()

        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x = clmul_mod(x, self.generator, self.modulus)
        exp[self.order:] = exp[: self.order]
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp = exp
        self.log = log

    def _find_generator(self) -> int:
        if self.l == 1:
            return 1
        n = self.order
        prime_factors = [f for f in range(2, n + 1) if n % f == 0 and all(f % d for d in range(2, int(f**0.5) + 1))]
        for g in range(2, self.q):
            if all(self._pow_schoolbook(g, n // f) != 1 for f in prime_factors):
                return g
        raise ParameterError(f"modulus for l={self.l} is not irreducible")  # pragma: no cover

    def _pow_schoolbook(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = clmul_mod(r, a, self.modulus)
            a = clmul_mod(a, a, self.modulus)
            e >>= 1
        return r

    def __repr__(self) -> str:
        return f"GF(2^{self.l})"

    # Scalar and vectorized arithmetic.  Arguments may be ints or int arrays.

    def add(self, a, b):
        return np.bitwise_xor(a, b)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.l == 1:
            return a & b
        prod = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldDivisionError("inverse of zero")
        return self.exp[(self.order - self.log[a]) % self.order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def random(self, rng: np.random.Generator, size=None):
        return rng.integers(0, self.q, size=size, dtype=np.int64)

    def random_nonzero(self, rng: np.random.Generator, size=None):
        return rng.integers(1, self.q, size=size, dtype=np.int64)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def to_hex(self, a: int) -> str:
        return format(int(a), f"0{hex_width(self.l)}x")

    def from_hex(self, s: str) -> int:
        v = int(s, 16)
        if v >= self.q:
            raise ParameterError(f"{s!r} is not an element of GF(2^{self.l})")
        return v


@functools.lru_cache(maxsize=None)
def gf(l: int) -> GF:
    """Shared field context for degree ``l``."""
    return GF(l)


@dataclass(frozen=True)
class FieldElement:
    """A single element of GF(2^l)."""

    bits: int
    l: int

    def __post_init__(self):
        if not 1 <= self.l <= MAX_DEGREE:
            raise ParameterError(f"extension degree must be in 1..{MAX_DEGREE}")
        if not 0 <= self.bits < 1 << self.l:
            raise ParameterError(f"{self.bits} does not fit in {self.l} bits")

    @property
    def field(self) -> GF:
        return gf(self.l)

    def _check(self, other: FieldElement) -> None:
        if self.l != other.l:
            raise DegreeMismatchError(f"GF(2^{self.l}) vs GF(2^{other.l})")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.bits ^ other.bits, self.l)

    __sub__ = __add__

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(int(self.field.mul(self.bits, other.bits)), self.l)

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field.pow(self.bits, e), self.l)

    def inverse(self) -> FieldElement:
        return FieldElement(int(self.field.inv(self.bits)), self.l)

    def __bool__(self) -> bool:
        return self.bits != 0

    def hex(self) -> str:
        return self.field.to_hex(self.bits)

    @classmethod
    def from_hex(cls, s: str, l: int) -> FieldElement:
        return cls(gf(l).from_hex(s), l)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def fe_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
