"""Construction and checking of the structured key matrices.

Two shapes are supported:

* stack orientation (binary McEliece variant): generator
  ``M = [I_{(m-1)p} | Stack(C_1, ..., C_{m-1})]`` of size (m-1)p × mp;
* array orientation (Niederreiter variant over GF(2^l)): parity-check
  ``H = [I_p | C_1 | ... | C_{m-1}]`` of size p × mp.

Circulants are built from a first *column*, as both constructions
describe them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .circulant import Circulant, circ_is_invertible, is_prime, is_primitive_root
from .errors import ParameterError, RetryError, StructureError
from .field import gf
from .linalg import identity

SPEC_HEADER = "QCSPEC v1"


@dataclass(frozen=True, eq=False)
class StackSpec:
    p: int
    m: int
    t_r: int
    circulants: tuple[Circulant, ...]
    orientation: str = "stack"
    l: int = 1

    def stack(self) -> np.ndarray:
        """The (m-1)p × p block column C."""
        return np.vstack([c.expand() for c in self.circulants])

    def generator(self) -> np.ndarray:
        k = (self.m - 1) * self.p
        return np.hstack([identity(k), self.stack()])

    def supports(self) -> list[list[int]]:
        return [sorted(int(i) for i in np.nonzero(c.first_column)[0]) for c in self.circulants]

    def __eq__(self, other) -> bool:
        return isinstance(other, StackSpec) and format_spec(self) == format_spec(other)


@dataclass(frozen=True, eq=False)
class ArraySpec:
    p: int
    m: int
    l: int
    circulants: tuple[Circulant, ...]
    a: int
    b: int
    orientation: str = "array"

    def array(self) -> np.ndarray:
        """The p × (m-1)p block row C."""
        return np.hstack([c.expand() for c in self.circulants])

    def parity(self) -> np.ndarray:
        return np.hstack([identity(self.p), self.array()])

    def __eq__(self, other) -> bool:
        return isinstance(other, ArraySpec) and format_spec(self) == format_spec(other)


# --- stack orientation -------------------------------------------------------


def _differences(x: int, current: list[int], p: int) -> list[int]:
    out = []
    for s in current:
        out += [(x - s) % p, (s - x) % p]
    return out


def _admissible(x: int, current: list[int], used: set[int], p: int) -> bool:
    d = _differences(x, current, p)
    return len(set(d)) == len(d) and used.isdisjoint(d)


def generate_c(p: int, m: int, t_r: int, rng: np.random.Generator) -> StackSpec:
    """Random stack of m-1 binary circulants of column weight t_r.

    Supports are grown one position at a time; after each pick the
    available set loses every position that would repeat a difference
    already realized inside some support (α4 = α1 + α3 - α2 mod p).  With
    all differences distinct, any two columns of the stack overlap in at
    most one position.
    """
    if t_r < 1 or t_r % 2 == 0:
        raise ParameterError(f"t_r must be a positive odd integer, got {t_r}")
    if m < 2:
        raise ParameterError("m must be at least 2")
    if not is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if p < 3 or not is_primitive_root(2, p):
        raise ParameterError(f"2 is not a primitive root mod {p}")
    if t_r > math.isqrt(p // m):
        raise ParameterError(f"t_r={t_r} exceeds floor(sqrt(p/m))={math.isqrt(p // m)}")

    chosen: set[int] = set()
    used: set[int] = set()
    supports = []
    for _ in range(m - 1):
        current: list[int] = []
        available = sorted(set(range(p)) - chosen)
        while len(current) < t_r:
            if not available:
                raise RetryError("available set exhausted; retry with a new seed")
            alpha = int(available[rng.integers(len(available))])
            used.update(_differences(alpha, current, p))
            current.append(alpha)
            chosen.add(alpha)
            available = [x for x in available if x not in chosen and _admissible(x, current, used, p)]
        supports.append(sorted(current))

    circs = []
    for sup in supports:
        col = np.zeros(p, dtype=np.int64)
        col[sup] = 1
        circs.append(Circulant.from_first_column(col, 1))
    return StackSpec(p=p, m=m, t_r=t_r, circulants=tuple(circs))


@dataclass
class StackReport:
    prime: bool
    invertible: bool
    overlap: bool
    weight_product: bool
    max_overlap: int
    column_weight: int
    row_weight: int

    @property
    def ok(self) -> bool:
        return self.prime and self.invertible and self.overlap and self.weight_product


def check_stack_conditions(s: StackSpec) -> StackReport:
    c = s.stack()
    gram = c.T @ c
    np.fill_diagonal(gram, 0)
    max_overlap = int(gram.max()) if gram.size else 0
    t = int(c.sum(axis=0).max())
    t_r = int(c.sum(axis=1).max())
    return StackReport(
        prime=is_prime(s.p),
        invertible=any(circ_is_invertible(ci) for ci in s.circulants),
        overlap=max_overlap <= 1,
        weight_product=t * t_r <= s.p - 1,
        max_overlap=max_overlap,
        column_weight=t,
        row_weight=t_r,
    )


# --- array orientation -------------------------------------------------------


def _normalize(v: np.ndarray, l: int, projective: bool) -> bytes:
    if projective:
        nz = np.nonzero(v)[0]
        if nz.size:
            F = gf(l)
            v = F.mul(v, int(F.inv(int(v[nz[0]]))))
    return np.ascontiguousarray(v, dtype=np.int64).tobytes()


def _shift_keys(x: np.ndarray, l: int, projective: bool) -> list[bytes]:
    return [_normalize(np.roll(x, j), l, projective) for j in range(x.size)]


def generate_h(
    p: int,
    m: int,
    l: int,
    rng: np.random.Generator,
    *,
    max_iters: int = 100_000,
    distinct_up_to_scalar: bool = True,
    max_m: Optional[int] = None,
) -> ArraySpec:
    """Random array ``[C_1 | ... | C_{m-1}]`` over GF(2^l) for the parity check.

    C_1's first column holds two marked elements a, b exactly once each;
    later blocks are drawn at random and rejected when a cyclic shift of
    the candidate collides with a column already present.  With
    ``distinct_up_to_scalar`` (the default) collisions are tested up to a
    nonzero scalar and against the identity columns too, so no two columns
    of H are proportional and the code corrects one error.
    """
    if not is_prime(p):
        raise ParameterError(f"p={p} is not prime")
    if m < 2:
        raise ParameterError("m must be at least 2")
    if max_m is None:
        max_m = max(p * p, 2)
    if m > max_m:
        raise ParameterError(f"m={m} exceeds the polynomial bound {max_m}")
    if l < 2:
        raise ParameterError("need l >= 2 so that a proper extension of GF(2) exists")
    F = gf(l)
    proj = distinct_up_to_scalar

    a, b = (int(x) for x in rng.choice(np.arange(1, F.q), size=2, replace=False))
    others = np.array([x for x in range(F.q) if x not in (a, b)], dtype=np.int64)

    seen: set[bytes] = set()
    for j in range(p):
        e = np.zeros(p, dtype=np.int64)
        e[j] = 1
        seen.add(_normalize(e, l, proj))

    def accept(x: np.ndarray) -> bool:
        keys = _shift_keys(x, l, proj)
        if len(set(keys)) != p or not seen.isdisjoint(keys):
            return False
        seen.update(keys)
        return True

    iters = 0
    while True:
        iters += 1
        if iters > max_iters:
            raise RetryError("could not build C_1 within the iteration budget")
        c1 = np.concatenate([[a, b], rng.choice(others, size=p - 2)])
        c1 = c1[rng.permutation(p)]
        if accept(c1):
            break
    columns = [c1]
    while len(columns) < m - 1:
        iters += 1
        if iters > max_iters:
            raise RetryError("rejection loop exceeded the iteration budget")
        x = F.random(rng, size=p)
        if (a in x) and (b in x):
            continue
        if np.all(x <= 1):
            continue
        if accept(x):
            columns.append(x)
    circs = tuple(Circulant.from_first_column(c, l) for c in columns)
    return ArraySpec(p=p, m=m, l=l, circulants=circs, a=a, b=b)


@dataclass
class ArrayReport:
    prime: bool
    shape: bool
    extension: bool
    iv_prime: bool
    distinct: bool
    iv_direct: Optional[bool] = None
    projective: bool = False

    @property
    def iv(self) -> bool:
        """Non-2-transitivity: checked directly when available, else implied by IV′."""
        return self.iv_direct if self.iv_direct is not None else self.iv_prime

    @property
    def ok(self) -> bool:
        return self.prime and self.shape and self.extension and self.iv_prime and self.distinct and self.iv


def _columns_distinct(c: np.ndarray, l: int, projective: bool) -> bool:
    keys = [_normalize(col, l, projective) for col in c.T]
    return len(set(keys)) == len(keys)


def check_array_conditions(s: ArraySpec, direct_max_p: int = 7) -> ArrayReport:
    p, l = s.p, s.l
    blocks = [c.expand() for c in s.circulants]
    shape = (
        len(s.circulants) == s.m - 1
        and all(c.p == p and c.l == l for c in s.circulants)
        and s.parity().shape == (p, s.m * p)
    )
    extension = l >= 2 and all(bool(np.all((blk > 1).any(axis=0))) for blk in blocks)

    a, b = s.a, s.b
    iv_prime = a != b and a != 0 and b != 0 and len(blocks) > 0
    if iv_prime:
        first = blocks[0]
        iv_prime = bool(np.all((first == a).sum(axis=0) == 1) and np.all((first == b).sum(axis=0) == 1))
        for blk in blocks[1:]:
            if (blk == a).any() and (blk == b).any():
                iv_prime = False

    c = s.array()
    distinct = _columns_distinct(c, l, projective=False)
    projective = _columns_distinct(s.parity(), l, projective=True)

    iv_direct = None
    if p <= direct_max_p and distinct:
        from .autgroup import enumerate_t_group

        iv_direct = not enumerate_t_group(s).two_transitive

    return ArrayReport(
        prime=is_prime(p) and s.m >= 2,
        shape=shape,
        extension=extension,
        iv_prime=iv_prime,
        distinct=distinct,
        iv_direct=iv_direct,
        projective=projective,
    )


# --- serialization -----------------------------------------------------------


def format_spec(s: StackSpec | ArraySpec) -> str:
    lines = [SPEC_HEADER, f"orientation {s.orientation}", f"p {s.p}", f"m {s.m}", f"l {s.l}"]
    F = gf(s.l)
    if isinstance(s, StackSpec):
        lines += [f"t_r {s.t_r}", "a -", "b -"]
    else:
        lines += ["t_r -", f"a {F.to_hex(s.a)}", f"b {F.to_hex(s.b)}"]
    text = "\n".join(lines) + "\n"
    return text + "".join(c.format() for c in s.circulants)


def parse_spec(text: str) -> StackSpec | ArraySpec:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != SPEC_HEADER:
        raise ParameterError(f"missing {SPEC_HEADER!r} header")
    fields = {}
    for ln in lines[1:8]:
        key, _, val = ln.partition(" ")
        fields[key] = val.strip()
    try:
        orientation = fields["orientation"]
        p, m, l = int(fields["p"]), int(fields["m"]), int(fields["l"])
    except (KeyError, ValueError) as exc:
        raise ParameterError("malformed spec fields") from exc
    body = lines[8:]
    if len(body) != 2 * (m - 1):
        raise StructureError(f"expected {m - 1} circulants, found {len(body) // 2}")
    circs = tuple(Circulant.parse("\n".join(body[2 * i : 2 * i + 2])) for i in range(m - 1))
    if orientation == "stack":
        return StackSpec(p=p, m=m, t_r=int(fields["t_r"]), circulants=circs)
    if orientation == "array":
        F = gf(l)
        return ArraySpec(p=p, m=m, l=l, circulants=circs, a=F.from_hex(fields["a"]), b=F.from_hex(fields["b"]))
    raise ParameterError(f"unknown orientation {orientation!r}")
