"""Linear-code primitives: weights, duals, reference codes, syndrome decoding."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DecodingFailure,
    DimensionError,
    DuplicatePointError,
    InvalidPointError,
    ParameterError,
    RankError,
    ResourceBoundError,
)
from .field import gf
from .linalg import as_matrix, mat_mul, mat_vec, rank, systematic_form

DEFAULT_CODEWORD_BOUND = 2**20
DEFAULT_TABLE_BOUND = 2**22


def hamming_weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def hamming_distance(x, y) -> int:
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {y.shape}")
    return int(np.count_nonzero(x != y))


def error_capacity(d: int) -> int:
    """Largest t with unique decoding: floor((d - 1) / 2)."""
    if d < 1:
        raise ParameterError("minimum distance must be positive")
    return (d - 1) // 2


def parity_from_generator(g: np.ndarray, l: int) -> np.ndarray:
    """A full-rank H with G·Hᵀ = 0.

    For systematic G = [I | A] this is [Aᵀ | I] (characteristic 2, so
    -Aᵀ = Aᵀ); otherwise G is brought to systematic form first and the
    column permutation is undone.
    """
    g = as_matrix(g, l)
    k, n = g.shape
    gs, perm = systematic_form(g, l)
    a = gs[:, k:]
    hs = np.hstack([a.T, np.eye(n - k, dtype=np.int64)])
    # gs = R·G·P, so G·(P·hsᵀ) = 0 and H = hs·Pᵀ = hs·P⁻¹
    return perm.inverse().apply_columns(hs)


def generator_from_parity(h: np.ndarray, l: int) -> np.ndarray:
    return parity_from_generator(h, l)


@dataclass
class LinearCode:
    """An [n, k] code over GF(2^l), given by a generator and/or parity matrix."""

    generator: Optional[np.ndarray] = None
    parity: Optional[np.ndarray] = None
    l: int = 1

    def __post_init__(self):
        if self.generator is None and self.parity is None:
            raise ParameterError("need a generator or a parity-check matrix")
        if self.generator is not None:
            self.generator = as_matrix(self.generator, self.l)
            if rank(self.generator, self.l) != self.generator.shape[0]:
                raise RankError("generator matrix is not full rank")
        if self.parity is not None:
            self.parity = as_matrix(self.parity, self.l)
            if rank(self.parity, self.l) != self.parity.shape[0]:
                raise RankError("parity-check matrix is not full rank")
        if self.generator is None:
            self.generator = generator_from_parity(self.parity, self.l)
        elif self.parity is None:
            self.parity = parity_from_generator(self.generator, self.l)
        else:
            if self.generator.shape[1] != self.parity.shape[1]:
                raise DimensionError("generator and parity lengths differ")
            if np.any(mat_mul(self.generator, self.parity.T, self.l)):
                raise ParameterError("G·Hᵀ != 0")
            if self.generator.shape[0] + self.parity.shape[0] != self.generator.shape[1]:
                raise DimensionError("dimensions of G and H are not complementary")

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def dual(self) -> LinearCode:
        return LinearCode(generator=self.parity, parity=self.generator, l=self.l)

    def encode(self, msg) -> np.ndarray:
        return mat_vec(self.generator.T, msg, self.l)

    def syndrome(self, x) -> np.ndarray:
        return mat_vec(self.parity, x, self.l)


def _all_messages(q: int, k: int) -> np.ndarray:
    digits = np.arange(q**k, dtype=np.int64)
    out = np.empty((q**k, k), dtype=np.int64)
    for i in range(k - 1, -1, -1):
        out[:, i] = digits % q
        digits //= q
    return out


def min_distance_bruteforce(code: LinearCode, bound: int = DEFAULT_CODEWORD_BOUND) -> int:
    """Exact minimum distance by enumerating the whole message space."""
    q = 1 << code.l
    if q**code.k > bound:
        raise ResourceBoundError(f"{q}^{code.k} codewords exceed the bound {bound}")
    msgs = _all_messages(q, code.k)[1:]
    words = mat_mul(msgs, code.generator, code.l)
    return int(np.count_nonzero(words, axis=1).min())


def hadamard_generator(r: int) -> np.ndarray:
    """r × 2^r binary matrix whose column i is i in binary (MSB in row 0)."""
    if r < 1:
        raise ParameterError("r must be positive")
    cols = np.arange(2**r)
    return np.array([(cols >> (r - 1 - i)) & 1 for i in range(r)], dtype=np.int64)


def poly_eval(coeffs: Sequence[int], x: int, l: int) -> int:
    """Horner evaluation; ``coeffs[i]`` multiplies x^i."""
    F = gf(l)
    acc = 0
    for c in reversed(list(coeffs)):
        acc = int(F.mul(acc, x)) ^ int(c)
    return acc


def goppa_parity(g: Sequence[int], points: Sequence[int], l: int) -> np.ndarray:
    """Goppa parity matrix H = V·D over GF(2^l).

    ``g`` lists coefficients from x^0 upward (degree t = len(g) - 1);
    V is the t×n Vandermonde matrix p_i^j and D = diag(1/g(p_i)).
    """
    F = gf(l)
    g = [int(c) for c in g]
    while len(g) > 1 and g[-1] == 0:
        g.pop()
    t = len(g) - 1
    if t < 1:
        raise ParameterError("Goppa polynomial must have degree >= 1")
    pts = [int(x) for x in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePointError("evaluation points must be distinct")
    values = [poly_eval(g, x, l) for x in pts]
    for x, v in zip(pts, values):
        if v == 0:
            raise InvalidPointError(f"point {x:#x} is a root of g")
    v_mat = np.array([[F.pow(x, j) for x in pts] for j in range(t)], dtype=np.int64)
    d_mat = np.diag(F.inv(np.array(values, dtype=np.int64)))
    return mat_mul(v_mat, d_mat, l)


def _key(s: np.ndarray) -> bytes:
    return np.ascontiguousarray(s, dtype=np.int64).tobytes()


def table_size(n: int, t: int, l: int) -> int:
    q = 1 << l
    return sum(comb(n, i) * (q - 1) ** i for i in range(t + 1))


@dataclass
class SyndromeDecoder:
    """Bounded-distance decoder backed by a syndrome -> error table.

    ``unique`` is False when two error patterns of weight <= t share a
    syndrome, i.e. t exceeds the code's true correction capacity; the table
    then keeps the lowest-weight, lexicographically first pattern.
    """

    parity: np.ndarray
    capacity: int
    l: int
    table: dict = field(repr=False, default_factory=dict)
    unique: bool = True

    @property
    def n(self) -> int:
        return self.parity.shape[1]

    def lookup(self, syndrome) -> np.ndarray:
        e = self.table.get(_key(np.asarray(syndrome)))
        if e is None:
            raise DecodingFailure("syndrome matches no error of weight <= t")
        return e.copy()

    def decode(self, received) -> tuple[np.ndarray, np.ndarray]:
        x = np.asarray(received, dtype=np.int64)
        if x.shape != (self.n,):
            raise DimensionError(f"received word must have length {self.n}")
        e = self.lookup(mat_vec(self.parity, x, self.l))
        return x ^ e, e


def build_syndrome_decoder(h: np.ndarray, t: int, l: int, bound: int = DEFAULT_TABLE_BOUND) -> SyndromeDecoder:
    h = as_matrix(h, l)
    n = h.shape[1]
    if t < 0:
        raise ParameterError("t must be non-negative")
    size = table_size(n, t, l)
    if size > bound:
        raise ResourceBoundError(f"syndrome table needs {size} entries, bound is {bound}")
    F = gf(l)
    nonzero = range(1, 1 << l)
    dec = SyndromeDecoder(parity=h, capacity=t, l=l)
    zero = np.zeros(n, dtype=np.int64)
    dec.table[_key(np.zeros(h.shape[0], dtype=np.int64))] = zero
    cols = h.T
    for w in range(1, t + 1):
        for support in itertools.combinations(range(n), w):
            for values in itertools.product(nonzero, repeat=w):
                s = np.zeros(h.shape[0], dtype=np.int64)
                for pos, v in zip(support, values):
                    s ^= F.mul(v, cols[pos])
                key = _key(s)
                if key in dec.table:
                    dec.unique = False
                    continue
                e = zero.copy()
                e[list(support)] = values
                dec.table[key] = e
    return dec


def decode(dec: SyndromeDecoder, received) -> tuple[np.ndarray, np.ndarray]:
    return dec.decode(received)


def row_space_equal(a: np.ndarray, b: np.ndarray, l: int) -> bool:
    """Same row space: equal ranks and rank unchanged by stacking."""
    ra, rb = rank(a, l), rank(b, l)
    return ra == rb == rank(np.vstack([a, b]), l)

