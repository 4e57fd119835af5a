"""Classical attack costs, toy-scale information-set decoding, parameter tables."""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from .codes import hamming_weight, parity_from_generator
from .errors import NoSolutionError, NotFoundError, ParameterError, RankError
from .field import gf
from .linalg import as_matrix, rank, rref, solve_right, vec_mat

DEFAULT_M_CAP = 5000


# --- Lee–Brickell work factor ------------------------------------------------


@dataclass(frozen=True)
class WorkFactorReport:
    n: int
    k: int
    t: int
    j: int
    alpha: Fraction
    beta: Fraction
    q: tuple[Fraction, ...]
    T: Fraction
    N: int
    W: Fraction

    @property
    def log2_W(self) -> float:
        return frac_log2(self.W)

    @property
    def success_per_iteration(self) -> Fraction:
        return 1 / self.T


def frac_log2(x: Fraction) -> float:
    """log2 of a positive rational, safe for numerators with thousands of bits."""
    if x <= 0:
        raise ParameterError("log2 of a non-positive value")
    return math.log2(x.numerator) - math.log2(x.denominator)


def _comb(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def lee_brickell_workfactor(n: int, k: int, t: int, j: int, alpha=1, beta=1) -> WorkFactorReport:
    """W_j = T_j (α k³ + N_j β k) in exact arithmetic.

    T_j = 1 / Σ_{i≤j} Q_i with Q_i = C(t,i) C(n-t,k-i) / C(n,k) and
    N_j = Σ_{i≤j} C(k,i).
    """
    if not (0 <= j <= t <= n and 0 <= k <= n):
        raise ParameterError(f"need 0 <= j <= t <= n and 0 <= k <= n (n={n}, k={k}, t={t}, j={j})")
    total = comb(n, k)
    q = tuple(Fraction(comb(t, i) * _comb(n - t, k - i), total) for i in range(j + 1))
    s = sum(q, Fraction(0))
    if s == 0:
        raise ParameterError("no information set avoids enough errors; T_j is infinite")
    alpha, beta = Fraction(alpha), Fraction(beta)
    big_t = 1 / s
    n_j = sum(comb(k, i) for i in range(j + 1))
    w = big_t * (alpha * k**3 + n_j * beta * k)
    return WorkFactorReport(n=n, k=k, t=t, j=j, alpha=alpha, beta=beta, q=q, T=big_t, N=n_j, W=w)


def w2_closed_form(p: int, m: int, t: int) -> Fraction:
    """T₂((m-1)³p³ + (m-1)p N₂) for the [mp, (m-1)p] quasi-cyclic code."""
    n, k = m * p, (m - 1) * p
    total = comb(n, k)
    t2 = 1 / (Fraction(comb(n - t, k), total) + Fraction(t * comb(n - t, k - 1), total) + Fraction(comb(t, 2) * comb(n - t, k - 2), total))
    n2 = 1 + k + comb(k, 2)
    return t2 * ((m - 1) ** 3 * p**3 + (m - 1) * p * n2)


def w2_float(p: int, m: int, t: int) -> float:
    """Floating-point W₂ via log-gamma, the cross-check for the exact value."""
    n, k = m * p, (m - 1) * p

    def lcomb(a: int, b: int) -> float:
        if b < 0 or b > a:
            return -math.inf
        return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)

    base = lcomb(n, k)
    s = sum(math.exp(lcomb(t, i) + lcomb(n - t, k - i) - base) for i in range(3))
    n2 = 1 + k + k * (k - 1) / 2
    return (k**3 + k * n2) / s


# --- block-count sweeps ------------------------------------------------------


def min_blocks_quantum(p: int) -> int:
    """Smallest m with p <= m(log2 m + log2 p)/4."""
    if p < 3:
        raise ParameterError("p must be at least 3")
    m = 2
    while p > 0.25 * m * (math.log2(m) + math.log2(p)):
        m += 1
    return m


def classical_log2_w(p: int, m: int, t: int, j: int = 2, alpha=1, beta=1) -> float:
    return lee_brickell_workfactor(m * p, (m - 1) * p, t, j, alpha, beta).log2_W


def min_blocks_classical(
    p: int, t: int, security_bits: float, j: int = 2, alpha=1, beta=1, cap: int = DEFAULT_M_CAP
) -> int:
    """Smallest m with log2 W_j(mp, (m-1)p, t) >= security_bits."""
    if t < j:
        raise ParameterError(f"need t >= j (t={t}, j={j})")
    for m in range(2, cap + 1):
        if t > m * p:
            continue
        if classical_log2_w(p, m, t, j, alpha, beta) >= security_bits:
            return m
    raise NotFoundError(f"no m <= {cap} reaches {security_bits} bits")


# --- rate and key sizes ------------------------------------------------------


def info_rate(p: int, m: int, l: int, t: int, symbols: str = "field") -> float:
    """log2(#plaintexts) / log2(#ciphertexts), ciphertexts being GF(2^l)^p.

    ``symbols="field"`` counts C(mp, t)·q^t plaintexts (a support of size t
    with an arbitrary symbol per position); ``symbols="nonzero"`` counts the
    exact-weight vectors C(mp, t)(q - 1)^t the codec emits.
    """
    n = m * p
    if not 0 <= t <= n:
        raise ParameterError(f"need 0 <= t <= mp (t={t})")
    if symbols == "field":
        count = comb(n, t) * (1 << (l * t))
    elif symbols == "nonzero":
        count = comb(n, t) * ((1 << l) - 1) ** t
    else:
        raise ParameterError(f"unknown symbol count {symbols!r}")
    if t == 0:
        return 0.0
    return math.log2(count) / (l * p)


def mceliece_keysize_bits(n: int, k: int) -> int:
    """Redundancy part of a systematic public generator: k(n - k) bits."""
    if not 0 <= k <= n:
        raise ParameterError("need 0 <= k <= n")
    return k * (n - k)


# --- parameter table ---------------------------------------------------------


@dataclass(frozen=True)
class PublishedRow:
    security: int
    p: int
    t: int
    m_c: int
    m_Q: int
    m: int
    log2_stern_success: int
    rows: int
    cols: int
    rate: float


# reference values as published; the stern column is stored, not recomputed
PUBLISHED_PARAMS = (
    PublishedRow(80, 101, 15, 17, 35, 35, -132, 101, 3535, 0.60),
    PublishedRow(80, 101, 20, 9, 35, 35, -190, 101, 3535, 0.77),
    PublishedRow(80, 211, 35, 4, 62, 62, -398, 211, 13082, 0.71),
    PublishedRow(80, 211, 40, 3, 62, 62, -465, 211, 13082, 0.80),
    PublishedRow(100, 101, 15, 40, 35, 40, -136, 101, 4040, 0.61),
    PublishedRow(100, 101, 20, 17, 35, 35, -190, 101, 3535, 0.77),
    PublishedRow(100, 211, 35, 5, 62, 62, -398, 211, 13082, 0.71),
    PublishedRow(100, 211, 40, 5, 62, 62, -465, 211, 13082, 0.80),
    PublishedRow(120, 101, 15, 95, 35, 95, -171, 101, 9595, 0.67),
    PublishedRow(120, 101, 20, 32, 35, 35, -190, 101, 3535, 0.77),
    PublishedRow(120, 211, 35, 8, 62, 62, -398, 211, 13082, 0.71),
    PublishedRow(120, 211, 40, 6, 62, 62, -465, 211, 13082, 0.80),
    PublishedRow(128, 101, 15, 134, 35, 134, -184, 101, 13534, 0.70),
    PublishedRow(128, 101, 20, 42, 35, 42, -199, 101, 4242, 0.79),
    PublishedRow(128, 211, 35, 9, 62, 62, -398, 211, 13082, 0.71),
    PublishedRow(128, 211, 40, 7, 62, 62, -465, 211, 13082, 0.80),
    PublishedRow(256, 211, 35, 98, 62, 98, -443, 211, 20678, 0.75),
    PublishedRow(256, 211, 20, 55, 62, 62, -465, 211, 13082, 0.80),
)


@dataclass(frozen=True)
class ParamRow:
    security: int
    p: int
    t: int
    l: int
    m_c: int
    m_Q: int
    m: int
    rate: float
    rows: int
    cols: int
    log2_w: float = field(default=math.nan, compare=False)


def param_row(security: int, p: int, t: int, l: int = 3, symbols: str = "field", j: int = 2) -> ParamRow:
    m_c = min_blocks_classical(p, t, security, j=j)
    m_q = min_blocks_quantum(p)
    m = max(m_c, m_q)
    return ParamRow(
        security=security,
        p=p,
        t=t,
        l=l,
        m_c=m_c,
        m_Q=m_q,
        m=m,
        rate=info_rate(p, m, l, t, symbols),
        rows=p,
        cols=m * p,
        log2_w=classical_log2_w(p, m, t, j),
    )


def param_report(rows: Iterable[Sequence[int]], symbols: str = "field") -> list[ParamRow]:
    """One :class:`ParamRow` per (security, p, t, l) input."""
    return [param_row(sec, p, t, l, symbols) for sec, p, t, l in rows]


@dataclass(frozen=True)
class Deviation:
    reference: PublishedRow
    computed: ParamRow
    log2_w_at_reference: float

    @property
    def m_c_match(self) -> bool:
        return self.reference.m_c == self.computed.m_c

    @property
    def m_Q_match(self) -> bool:
        return self.reference.m_Q == self.computed.m_Q

    @property
    def rate_error(self) -> float:
        return self.computed.rate - self.reference.rate


def published_comparison(l: int = 3, symbols: str = "field") -> list[Deviation]:
    out = []
    for ref in PUBLISHED_PARAMS:
        row = param_row(ref.security, ref.p, ref.t, l, symbols)
        out.append(Deviation(ref, row, classical_log2_w(ref.p, ref.m_c, ref.t)))
    return out


CSV_COLUMNS = ("security", "p", "t", "l", "m_c", "m_Q", "m", "rate", "rows", "cols")


def format_rows_text(rows: Sequence[ParamRow]) -> str:
    head = ["security", "p", "t", "l", "m_c", "m_Q", "m", "rate", "rows", "cols"]
    body = [
        [str(r.security), str(r.p), str(r.t), str(r.l), str(r.m_c), str(r.m_Q), str(r.m), f"{r.rate:.4f}", str(r.rows), str(r.cols)]
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in [head, *body]]
    return "\n".join(lines) + "\n"


def format_rows_csv(rows: Sequence[ParamRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow([r.security, r.p, r.t, r.l, r.m_c, r.m_Q, r.m, f"{r.rate:.6f}", r.rows, r.cols])
    return buf.getvalue()


def format_deviations(devs: Sequence[Deviation]) -> str:
    lines = []
    for d in devs:
        ref = d.reference
        if d.m_c_match and d.m_Q_match and abs(d.rate_error) <= 0.01:
            continue
        lines.append(
            f"deviation security={ref.security} p={ref.p} t={ref.t}: "
            f"m_c computed {d.computed.m_c} vs table {ref.m_c}, "
            f"m_Q computed {d.computed.m_Q} vs table {ref.m_Q}, "
            f"rate computed {d.computed.rate:.4f} vs table {ref.rate:.2f}, "
            f"log2 W2 at table m_c={ref.m_c}: {d.log2_w_at_reference:.2f}"
        )
    if not lines:
        return "deviations: none\n"
    return "\n".join(lines) + "\n"


# --- information-set decoding ------------------------------------------------


@dataclass
class AttackOutcome:
    success: bool
    plaintext: Optional[np.ndarray]
    error: Optional[np.ndarray]
    iterations: int
    info_set_draws: int = 0
    candidates: int = 0


def _low_weight_patterns(k: int, j: int, l: int):
    """All vectors of weight <= j on k coordinates, as (positions, values)."""
    nonzero = range(1, 1 << l)
    for w in range(j + 1):
        for pos in itertools.combinations(range(k), w):
            for vals in itertools.product(nonzero, repeat=w):
                yield pos, vals


def _information_set(g: np.ndarray, l: int, rng: np.random.Generator, mode: str) -> tuple[np.ndarray, np.ndarray, int]:
    """A random information set I and U = G_I⁻¹·G, plus the number of draws used.

    ``greedy`` permutes the columns at random and keeps the first k
    independent ones (every draw succeeds).  ``uniform`` draws k-subsets
    uniformly and rejects singular ones.
    """
    k, n = g.shape
    if mode == "greedy":
        order = rng.permutation(n)
        r, piv = rref(g[:, order], l)
        if len(piv) < k:
            raise RankError("generator is not full rank")
        u = np.empty_like(r)
        u[:, order] = r
        return order[list(piv)], u, 1
    if mode == "uniform":
        draws = 0
        while True:
            draws += 1
            cols = np.sort(rng.choice(n, size=k, replace=False))
            order = np.concatenate([cols, np.setdiff1d(np.arange(n), cols)])
            r, piv = rref(g[:, order], l)
            if list(piv) == list(range(k)):
                u = np.empty_like(r)
                u[:, order] = r
                return cols, u, draws
    raise ParameterError(f"unknown information-set mode {mode!r}")


def lee_brickell_iteration(
    g: np.ndarray, c: np.ndarray, t: int, j: int, l: int, rng: np.random.Generator, mode: str = "greedy"
) -> tuple[list[tuple[np.ndarray, np.ndarray]], int]:
    """One round: every (plaintext, residual) with residual c - mG of weight <= t.

    Candidates come from error patterns of weight <= j on the chosen
    information set I: m = (c_I - e_I)·G_I⁻¹ and the residual is
    r0 + e_I·U with r0 = c - c_I·U, U = G_I⁻¹·G.
    """
    F = gf(l)
    info, u, draws = _information_set(g, l, rng, mode)
    c_i = c[info]
    r0 = c ^ vec_mat(c_i, u, l)
    g_i = g[:, info]
    out = []
    for pos, vals in _low_weight_patterns(len(info), j, l):
        r = r0.copy()
        for p_, v in zip(pos, vals):
            r ^= F.mul(v, u[p_])
        if hamming_weight(r) <= t:
            x = c_i.copy()
            x[list(pos)] ^= np.array(vals, dtype=np.int64)
            out.append((solve_right(g_i.T, x, l), r))
    return out, draws


def _public_matrix(pubkey) -> tuple[np.ndarray, int]:
    if hasattr(pubkey, "g_pub"):
        return pubkey.g_pub, pubkey.l
    return as_matrix(pubkey, 1), 1


def lee_brickell_attack(
    pubkey,
    c,
    t: int,
    j: int,
    rng: np.random.Generator,
    max_iters: int = 10_000,
    mode: str = "greedy",
) -> AttackOutcome:
    """Recover the plaintext of c = m·G' + e, wt(e) <= t, from the public generator alone."""
    g, l = _public_matrix(pubkey)
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (g.shape[1],):
        raise ParameterError(f"ciphertext must have length {g.shape[1]}")
    if j < 0 or t < 0:
        raise ParameterError("t and j must be non-negative")
    draws = total = 0
    for it in range(1, max_iters + 1):
        cands, d = lee_brickell_iteration(g, c, t, j, l, rng, mode)
        draws += d
        total += len(cands)
        if cands:
            m, r = cands[0]
            return AttackOutcome(True, m, r, it, draws, total)
    return AttackOutcome(False, None, None, max_iters, draws, total)


def lee_brickell_success_rate(
    g: np.ndarray,
    c: np.ndarray,
    planted: np.ndarray,
    t: int,
    j: int,
    rng: np.random.Generator,
    iters: int,
    l: int = 1,
    mode: str = "greedy",
) -> tuple[int, int]:
    """Count iterations whose verified candidates include ``planted``."""
    planted = np.asarray(planted, dtype=np.int64)
    hits = draws = 0
    for _ in range(iters):
        cands, d = lee_brickell_iteration(g, c, t, j, l, rng, mode)
        draws += d
        if any(np.array_equal(m, planted) for m, _ in cands):
            hits += 1
    return hits, draws


def stern_attack(
    pubkey,
    c,
    t: int,
    rng: np.random.Generator,
    half_weight: int = 1,
    window: int = 2,
    max_iters: int = 1000,
) -> AttackOutcome:
    """Collision-based search for the weight-t word of the extended code [G'; c].

    Binary only.  Each round puts the parity check of the extended code in
    systematic form on a random column order, splits the information
    columns into two halves, and pairs subsets of size <= ``half_weight``
    that agree on ``window`` redundancy rows.
    """
    g, l = _public_matrix(pubkey)
    if l != 1:
        raise ParameterError("the collision search is implemented over GF(2) only")
    c = np.asarray(c, dtype=np.int64)
    k, n = g.shape
    if window < 0 or window > n - k:
        raise ParameterError(f"window {window} outside [0, n-k={n - k}]")
    if half_weight < 0:
        raise ParameterError("half_weight must be non-negative")
    try:
        m0 = solve_right(g.T, c, 1)
        return AttackOutcome(True, m0, np.zeros(n, dtype=np.int64), 0)
    except NoSolutionError:
        pass
    ext = np.vstack([g, c[None, :]])
    h = parity_from_generator(ext, 1)
    r = h.shape[0]
    if rank(ext, 1) != k + 1:
        raise RankError("public generator is not full rank")
    window = min(window, r)

    def finish(e: np.ndarray) -> Optional[np.ndarray]:
        try:
            return solve_right(g.T, c ^ e, 1)
        except NoSolutionError:
            return None

    for it in range(1, max_iters + 1):
        order = rng.permutation(n)
        red, piv = rref(h[:, order], 1)
        piv = list(piv)
        info = [i for i in range(n) if i not in set(piv)]
        q = red[:, info]  # column i of q: redundancy pattern of info column i
        info_idx = rng.permutation(len(info))
        half = len(info) // 2
        xs, ys = info_idx[:half], info_idx[half:]
        rows = rng.choice(r, size=window, replace=False)

        def subsets(side):
            table = {}
            for w in range(half_weight + 1):
                for sub in itertools.combinations(side, w):
                    s = q[:, list(sub)].sum(axis=1) & 1 if sub else np.zeros(r, dtype=np.int64)
                    table.setdefault(s[rows].tobytes(), []).append((sub, s))
            return table

        left, right = subsets(xs), subsets(ys)
        for key, lefts in left.items():
            for a, sa in lefts:
                for b, sb in right.get(key, ()):
                    if not a and not b:
                        continue
                    red_part = sa ^ sb
                    if len(a) + len(b) + int(red_part.sum()) != t:
                        continue
                    word = np.zeros(n, dtype=np.int64)
                    for idx in (*a, *b):
                        word[order[info[idx]]] = 1
                    for row, pcol in enumerate(piv):
                        word[order[pcol]] = red_part[row]
                    m = finish(word)
                    if m is not None:
                        return AttackOutcome(True, m, word, it)
    return AttackOutcome(False, None, None, max_iters)
