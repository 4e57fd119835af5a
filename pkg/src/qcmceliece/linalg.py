"""Dense linear algebra over GF(2^l).

Matrices are plain 2-D numpy ``int64`` arrays; the field is passed as the
extension degree ``l``.  Pivoting is deterministic: leftmost nonzero column,
topmost nonzero row, free variables set to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NoSolutionError, ParameterError, RankError
from .field import gf, hex_width


def as_matrix(a, l: int | None = None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    if l is not None and m.size and (m.min() < 0 or m.max() >= 1 << l):
        raise ParameterError(f"matrix entries outside GF(2^{l})")
    return m


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    """Matrix product over GF(2^l)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec_a, vec_b = a.ndim == 1, b.ndim == 1
    if vec_a:
        a = a[None, :]
    if vec_b:
        b = b[:, None]
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if l == 1:
        out = (a @ b) & 1
    else:
        F = gf(l)
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(a.shape[1]):
            out ^= F.mul(a[:, i : i + 1], b[i : i + 1, :])
    if vec_a and vec_b:
        return out[0, 0]
    if vec_a:
        return out[0]
    if vec_b:
        return out[:, 0]
    return out


def mat_vec(a: np.ndarray, v: np.ndarray, l: int) -> np.ndarray:
    """A·vᵀ as a 1-D vector."""
    return mat_mul(a, np.asarray(v, dtype=np.int64), l)


def vec_mat(v: np.ndarray, a: np.ndarray, l: int) -> np.ndarray:
    """v·A for a row vector v."""
    return mat_mul(np.asarray(v, dtype=np.int64), a, l)


def rref(m: np.ndarray, l: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns.

    Only the first ``ncols`` columns are used as pivot candidates (all of
    them by default); the remaining columns are carried along, which is how
    augmented systems are handled.
    """
    F = gf(l)
    r = np.array(m, dtype=np.int64, copy=True)
    rows, cols = r.shape
    ncols = cols if ncols is None else ncols
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        lead = int(r[row, col])
        if lead != 1:
            r[row] = F.mul(r[row], int(F.inv(lead)))
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            r[others] ^= F.mul(r[others, col : col + 1], r[row][None, :])
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, l: int) -> int:
    return len(rref(m, l)[1])


def inverse(m: np.ndarray, l: int) -> np.ndarray:
    """Gauss-Jordan inverse of a square matrix."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionError(f"inverse needs a square matrix, got {m.shape}")
    r, pivots = rref(np.hstack([m, identity(n)]), l, ncols=n)
    if len(pivots) != n:
        raise RankError(f"matrix is singular (rank {len(pivots)} < {n})")
    return r[:, n:]


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``range(n)`` given by its image list.

    As a matrix P has P[i, images[i]] = 1, so right multiplication by P sends
    column i to column images[i] and left multiplication picks row
    images[i] into row i.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(len(imgs))):
            raise ParameterError(f"not a permutation: {imgs}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def cycle(cls, n: int) -> Permutation:
        """The n-cycle x -> x + 1 mod n."""
        return cls(tuple((i + 1) % n for i in range(n)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    @property
    def n(self) -> int:
        return len(self.images)

    def matrix(self) -> np.ndarray:
        n = self.n
        m = np.zeros((n, n), dtype=np.int64)
        m[np.arange(n), self.images] = 1
        return m

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """self ∘ other, i.e. x -> self(other(x))."""
        return Permutation(tuple(self.images[x] for x in other.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def moved_points(self) -> int:
        return sum(1 for i, x in enumerate(self.images) if i != x)

    def apply_columns(self, m: np.ndarray) -> np.ndarray:
        """M·P (also works on row vectors)."""
        m = np.asarray(m)
        out = np.empty_like(m)
        out[..., list(self.images)] = m
        return out

    def apply_rows(self, m: np.ndarray) -> np.ndarray:
        """P·M."""
        return np.asarray(m)[list(self.images)]

    def direct_sum(self, other: Permutation) -> Permutation:
        """Block-diagonal self ⊕ other acting on n + other.n points."""
        return Permutation(self.images + tuple(self.n + x for x in other.images))

    def format(self) -> str:
        return " ".join(str(x) for x in self.images)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        return cls(tuple(int(x) for x in text.split()))


def systematic_form(m: np.ndarray, l: int) -> tuple[np.ndarray, Permutation]:
    """Row-reduce a full-row-rank matrix to ``[I | *]``.

    Returns ``(R·M·P, P)`` where P is the column permutation that moves the
    pivot columns to the front (identity when row operations suffice).
    """
    m = as_matrix(m)
    k, n = m.shape
    r, pivots = rref(m, l)
    if len(pivots) < k:
        raise RankError(f"rank {len(pivots)} < {k} rows")
    rest = [c for c in range(n) if c not in set(pivots)]
    order = pivots + rest
    perm = Permutation(tuple(order)).inverse()
    return perm.apply_columns(r), perm


def solve_right(h: np.ndarray, y: np.ndarray, l: int) -> np.ndarray:
    """Some z with H·zᵀ = y (free variables zero)."""
    h = as_matrix(h)
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (h.shape[0],):
        raise DimensionError(f"right-hand side needs {h.shape[0]} entries, got {y.shape}")
    n = h.shape[1]
    r, pivots = rref(np.hstack([h, y[:, None]]), l, ncols=n)
    if np.any(r[len(pivots):, n]):
        raise NoSolutionError("inconsistent system")
    z = np.zeros(n, dtype=np.int64)
    z[pivots] = r[: len(pivots), n]
    return z


def kernel_basis(m: np.ndarray, l: int) -> np.ndarray:
    """Rows spanning the right null space {x : M·xᵀ = 0}."""
    m = as_matrix(m)
    n = m.shape[1]
    r, pivots = rref(m, l)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        # char 2: -x = x
        basis[i, pivots] = r[: len(pivots), f]
    return basis


def sample_scrambler(k: int, l: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform invertible k×k matrix by rejection sampling."""
    if k < 1:
        raise ParameterError("k must be positive")
    F = gf(l)
    while True:
        s = F.random(rng, size=(k, k))
        if rank(s, l) == k:
            return s


def sample_permutation(n: int, rng: np.random.Generator) -> Permutation:
    if n < 1:
        raise ParameterError("n must be positive")
    return Permutation(tuple(int(x) for x in rng.permutation(n)))


def format_vector(v: Sequence[int], l: int) -> str:
    w = hex_width(l)
    return " ".join(format(int(x), f"0{w}x") for x in v)


def parse_vector(line: str, l: int) -> np.ndarray:
    F = gf(l)
    return np.array([F.from_hex(tok) for tok in line.split()], dtype=np.int64)


def format_matrix(m: np.ndarray, l: int) -> str:
    """Text form: ``rows cols l`` then one line of hex elements per row."""
    m = as_matrix(m, l)
    lines = [f"{m.shape[0]} {m.shape[1]} {l}"]
    lines += [format_vector(row, l) for row in m]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str | list[str]) -> tuple[np.ndarray, int]:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    lines = [ln for ln in lines if ln.strip()]
    try:
        rows, cols, l = (int(x) for x in lines[0].split())
    except (IndexError, ValueError) as exc:
        raise ParameterError("bad matrix header") from exc
    if len(lines) - 1 < rows:
        raise ParameterError(f"expected {rows} matrix rows, got {len(lines) - 1}")
    m = np.zeros((rows, cols), dtype=np.int64)
    for i in range(rows):
        v = parse_vector(lines[1 + i], l)
        if v.shape != (cols,):
            raise ParameterError(f"row {i} has {v.size} entries, expected {cols}")
        m[i] = v
    return m, l


def read_matrix_block(lines: list[str], start: int) -> tuple[np.ndarray, int, int]:
    """Parse a matrix beginning at ``lines[start]``; return (M, l, next index)."""
    rows = int(lines[start].split()[0])
    m, l = parse_matrix(lines[start : start + rows + 1])
    return m, l, start + rows + 1
