"""Slow, obviously-correct reference implementations used as test oracles.

None of these touch the package's log tables or elimination routines.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np


def poly_mulmod(a: int, b: int, modulus: int) -> int:
    """Shift-and-add product of two polynomials over GF(2), reduced by ``modulus``."""
    deg = modulus.bit_length() - 1
    prod = 0
    for i in range(b.bit_length()):
        if (b >> i) & 1:
            prod ^= a << i
    for i in range(prod.bit_length() - 1, deg - 1, -1):
        if (prod >> i) & 1:
            prod ^= modulus << (i - deg)
    return prod


def inv_search(a: int, modulus: int) -> int:
    deg = modulus.bit_length() - 1
    for x in range(1, 1 << deg):
        if poly_mulmod(a, x, modulus) == 1:
            return x
    raise ZeroDivisionError(a)


def naive_matmul(a, b, modulus: int) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0
            for k in range(a.shape[1]):
                acc ^= poly_mulmod(int(a[i, k]), int(b[k, j]), modulus)
            out[i, j] = acc
    return out


def naive_rank(m, modulus: int) -> int:
    """Rank by plain Gaussian elimination with the reference multiplier."""
    r = [list(map(int, row)) for row in np.asarray(m)]
    rows, cols = len(r), len(r[0]) if r else 0
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if r[i][c]), None)
        if piv is None:
            continue
        r[rank], r[piv] = r[piv], r[rank]
        inv = inv_search(r[rank][c], modulus)
        r[rank] = [poly_mulmod(x, inv, modulus) for x in r[rank]]
        for i in range(rows):
            if i != rank and r[i][c]:
                f = r[i][c]
                r[i] = [x ^ poly_mulmod(f, y, modulus) for x, y in zip(r[i], r[rank])]
        rank += 1
    return rank


def cyclic_convolution(a, b, modulus: int) -> list[int]:
    """Coefficients of a(x)·b(x) mod x^p - 1 over GF(2^l)."""
    p = len(a)
    out = [0] * p
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[(i + j) % p] ^= poly_mulmod(int(x), int(y), modulus)
    return out


def all_codewords_min_weight(g, modulus: int) -> int:
    g = np.asarray(g)
    k = g.shape[0]
    q = 1 << (modulus.bit_length() - 1)
    best = None
    for msg in itertools.product(range(q), repeat=k):
        if not any(msg):
            continue
        word = naive_matmul(np.array([msg]), g, modulus)[0]
        w = int(np.count_nonzero(word))
        best = w if best is None else min(best, w)
    return best


def lee_brickell_exact(n: int, k: int, t: int, j: int) -> tuple[Fraction, int, Fraction]:
    """(T_j, N_j, W_j) with α = β = 1, straight from the definitions."""
    s = Fraction(0)
    for i in range(j + 1):
        if k - i >= 0:
            s += Fraction(comb(t, i) * comb(n - t, k - i), comb(n, k))
    t_j = 1 / s
    n_j = sum(comb(k, i) for i in range(j + 1))
    return t_j, n_j, t_j * (k**3 + n_j * k)


def quantum_condition(p: int, m: int) -> bool:
    import math

    return p <= 0.25 * m * (math.log2(m) + math.log2(p))


def info_set_success_exact(g, t_support, j: int) -> Fraction:
    """P(|I ∩ E| <= j) for I uniform over the information sets of binary g."""
    g = np.asarray(g)
    k, n = g.shape
    good = total = 0
    for cols in itertools.combinations(range(n), k):
        if naive_rank(g[:, cols], 0b11) == k:
            total += 1
            if len(set(cols) & set(t_support)) <= j:
                good += 1
    return Fraction(good, total)
