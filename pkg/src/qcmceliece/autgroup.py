"""Brute-force automorphism audits for small block size p.

For H = [I | C] (array orientation) every automorphism splits as
P = P_I ⊕ P_C with scrambler A = P_I⁻¹, and Aut(H) is in bijection with
the pairs (P1, P2) satisfying P1·C·P2 = C.  Because the columns of C are
distinct, each row permutation P1 has at most one partner P2, so the
audit sweeps S_p over P1 and matches columns.  The stack orientation
(binary generator [I | C] with C tall) is the transpose situation: sweep
S_p over column permutations P2 and match rows.

The group T of p-point permutations that occur is what the security
argument is about: it contains the p-cycle x -> x + 1, so by Burnside's
theorem it is either 2-transitive or lies inside AGL_1(F_p), which has
p(p - 1) elements.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import GroupError, ParameterError, ResourceBoundError, StructureError
from .linalg import Permutation, mat_mul
from .qcgen import ArraySpec, StackSpec

DEFAULT_MAX_P = 8


@dataclass
class AutReport:
    p: int
    m: int
    orientation: str
    t_group: list[Permutation]
    partners: list[Permutation]
    aut_size: int
    min_degree: int
    two_transitive: bool
    bound_ok: bool
    k_size: int
    contains_shift: bool
    full: list[Permutation] = field(default_factory=list, repr=False)

    def format(self) -> str:
        """Plain ``key: value`` report."""
        lines = [
            f"orientation: {self.orientation}",
            f"p: {self.p}",
            f"m: {self.m}",
            f"aut_size: {self.aut_size}",
            f"aut_bound: {self.p * (self.p - 1)}",
            f"bound_ok: {str(self.bound_ok).lower()}",
            f"min_degree: {self.min_degree}",
            f"min_degree_bound: {self.p - 1}",
            f"two_transitive: {str(self.two_transitive).lower()}",
            f"contains_shift: {str(self.contains_shift).lower()}",
            f"k_size: {self.k_size}",
        ]
        return "\n".join(lines) + "\n"


def _encode(vals: np.ndarray, l: int) -> np.ndarray:
    """Pack the last axis of ``vals`` into one integer per vector."""
    weights = np.left_shift(np.int64(1), l * np.arange(vals.shape[-1], dtype=np.int64))
    return (vals * weights).sum(axis=-1)


def _match(keys: np.ndarray, target: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index of each key in ``target`` (distinct entries) and a found mask."""
    order = np.argsort(target)
    sorted_t = target[order]
    pos = np.searchsorted(sorted_t, keys)
    pos = np.clip(pos, 0, sorted_t.size - 1)
    found = sorted_t[pos] == keys
    return order[pos], found


def _sweep(vectors: np.ndarray, l: int, perms: np.ndarray) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Solve for partners when the p coordinates of ``vectors`` are permuted.

    ``vectors`` is (N, p): N distinct vectors over p coordinates.  For each
    permutation σ (rows of ``perms``) the permuted vectors v∘σ must be a
    rearrangement τ of the originals; returns the (σ, τ) pairs with
    τ[j] = index of vector j after permutation.
    """
    if l * vectors.shape[1] > 62:
        raise ResourceBoundError("vectors too long to pack; lower p or l")
    target = _encode(vectors, l)
    permuted = vectors[:, perms]  # (N, P, p)
    keys = _encode(permuted, l).T  # (P, N)
    idx, found = _match(keys, target)
    ok = found.all(axis=1)
    return [(tuple(int(x) for x in perms[i]), tuple(int(x) for x in idx[i])) for i in np.nonzero(ok)[0]]


def _all_perms(p: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(p))), dtype=np.int64)


def enumerate_t_group(spec: StackSpec | ArraySpec, max_p: int = DEFAULT_MAX_P) -> AutReport:
    p, m = spec.p, spec.m
    if p > max_p:
        raise ResourceBoundError(f"p={p} exceeds the enumeration bound {max_p} ({math.factorial(p)} permutations)")
    perms = _all_perms(p)
    if isinstance(spec, ArraySpec):
        c = spec.array()
        cols = c.T  # (m-1)p vectors of length p, indexed by row
        if len(set(map(bytes, cols.astype(np.int64)))) != cols.shape[0]:
            raise StructureError("C has repeated columns; partner matching is not unique")
        # (P1·C)[i] = C[σ(i)], so column j of P1·C is cols[j][σ]
        pairs = _sweep(cols, spec.l, perms)
        t_group = [Permutation(s) for s, _ in pairs]
        partners = [Permutation(t) for _, t in pairs]
        # automorphism of H: P_I = P1⁻¹ on the identity block, P_C = P2
        full = [t.inverse().direct_sum(u) for t, u in zip(t_group, partners)]
    elif isinstance(spec, StackSpec):
        c = spec.stack()
        rows = c  # (m-1)p vectors of length p, indexed by column
        if len(set(map(bytes, rows.astype(np.int64)))) != rows.shape[0]:
            raise StructureError("C has repeated rows; partner matching is not unique")
        # (C·P2)[:, σ(j)] = C[:, j]: row r of C·P2 is rows[r][σ⁻¹]
        pairs = _sweep(rows, 1, perms)
        t_group, partners = [], []
        for s, idx in pairs:
            sigma = Permutation(s).inverse()
            # row r of C·P2 equals row idx[r] of C; P1 = perm with P1·(C·P2) = C
            t_group.append(sigma)
            partners.append(Permutation(idx).inverse())
        full = [r.inverse().direct_sum(s) for s, r in zip(t_group, partners)]
    else:
        raise ParameterError(f"unsupported spec type {type(spec).__name__}")

    aut_size = len(t_group)
    nontrivial = [u for u in full if not u.is_identity()]
    mdeg = min((u.moved_points() for u in nontrivial), default=0)
    shift = Permutation.cycle(p)
    return AutReport(
        p=p,
        m=m,
        orientation=spec.orientation,
        t_group=t_group,
        partners=partners,
        aut_size=aut_size,
        min_degree=mdeg,
        two_transitive=is_two_transitive(t_group, check_closure=False),
        bound_ok=aut_size <= p * (p - 1),
        k_size=2 * aut_size**2,
        contains_shift=shift in set(t_group),
        full=full,
    )


def verify_automorphism(spec: StackSpec | ArraySpec, full: Permutation) -> bool:
    """Check A·M·P = M densely with A the inverse of P's identity-block part.

    Also confirms that P maps the identity-block columns among themselves.
    """
    mat = spec.parity() if isinstance(spec, ArraySpec) else spec.generator()
    k = mat.shape[0]
    imgs = full.images
    if sorted(imgs[:k]) != list(range(k)):
        return False
    p_i = Permutation(imgs[:k])
    a = p_i.inverse().matrix()
    lhs = mat_mul(mat_mul(a, mat, spec.l), full.matrix(), spec.l)
    return bool(np.array_equal(lhs, mat))


def _check_closed(group: set[tuple[int, ...]]) -> None:
    for g in group:
        for h in group:
            if tuple(g[x] for x in h) not in group:
                raise GroupError("permutation set is not closed under composition")


def is_two_transitive(perms: Iterable[Permutation], check_closure: bool = True) -> bool:
    """True iff the group acts transitively on ordered pairs of distinct points."""
    group = {tuple(g.images) if isinstance(g, Permutation) else tuple(g) for g in perms}
    if not group:
        raise GroupError("empty permutation set")
    n = len(next(iter(group)))
    if check_closure:
        _check_closed(group)
    if n < 2:
        return True
    orbit = {(g[0], g[1]) for g in group}
    return len(orbit) == n * (n - 1)


def min_degree(perms: Iterable[Permutation]) -> int:
    """Fewest points moved by a non-identity element."""
    moved = [g.moved_points() for g in perms if not g.is_identity()]
    if not moved:
        raise GroupError("minimal degree undefined for the trivial group")
    return min(moved)


@dataclass
class QuantumPremise:
    p: int
    m: int
    l: int
    delta: float
    threshold: float
    holds: bool
    a_required: float
    premise_ok: bool
    a_required_field: float
    nominal_bound: float
    measured_bound: Optional[float] = None

    def format(self) -> str:
        lines = [
            f"quantum_p: {self.p}",
            f"quantum_m: {self.m}",
            f"quantum_threshold: {self.threshold:.4f}",
            f"quantum_holds: {str(self.holds).lower()}",
            f"premise_a_required: {self.a_required:.6f}",
            f"premise_ok: {str(self.premise_ok).lower()}",
            f"premise_a_required_field: {self.a_required_field:.6f}",
            f"delta: {self.delta}",
            f"nominal_bound: {self.nominal_bound:.6e}",
        ]
        if self.measured_bound is not None:
            lines.append(f"measured_bound: {self.measured_bound:.6e}")
        return "\n".join(lines) + "\n"


def quantum_threshold(p: int, m: int) -> float:
    """m(log2 m + log2 p)/4; the block count m suffices when p is at most this."""
    return 0.25 * m * (math.log2(m) + math.log2(p))


def quantum_premise(
    p: int,
    m: int,
    l: int,
    delta: float = 1.0,
    aut_size: Optional[int] = None,
    min_deg: Optional[int] = None,
) -> QuantumPremise:
    """Evaluate the numeric premises behind the indistinguishability claim.

    * ``holds``: p <= m(log2 m + log2 p)/4;
    * ``a_required``: smallest a with 2^(p^2) <= (mp)^(a·mp), premise_ok
      iff it is at most 1/4 (``a_required_field`` uses q = 2^l in place of 2);
    * ``nominal_bound``: 4 p^8 e^(-δp), the |K|^2 e^(-δp) ceiling with
      |Aut| <= p(p - 1).  With a measured ``aut_size`` and ``min_deg`` the
      bound (2|Aut|^2)^2 e^(-δ·min_deg) is reported too.
    """
    if p < 2 or m < 2:
        raise ParameterError("need p, m >= 2")
    thr = quantum_threshold(p, m)
    n = m * p
    a_req = p * p / (n * math.log2(n))
    measured = None
    if aut_size is not None and min_deg is not None:
        measured = (2 * aut_size**2) ** 2 * math.exp(-delta * min_deg)
    return QuantumPremise(
        p=p,
        m=m,
        l=l,
        delta=delta,
        threshold=thr,
        holds=p <= thr,
        a_required=a_req,
        premise_ok=a_req <= 0.25,
        a_required_field=l * a_req,
        nominal_bound=4 * p**8 * math.exp(-delta * p),
        measured_bound=measured,
    )
