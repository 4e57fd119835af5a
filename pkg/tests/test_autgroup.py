import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmceliece.autgroup import (
    enumerate_t_group,
    is_two_transitive,
    min_degree,
    quantum_premise,
    quantum_threshold,
    verify_automorphism,
)
from qcmceliece.circulant import Circulant
from qcmceliece.errors import GroupError, ResourceBoundError, StructureError
from qcmceliece.linalg import Permutation
from qcmceliece.qcgen import ArraySpec, StackSpec, generate_c, generate_h


def brute_force_t_group(spec: ArraySpec) -> set[tuple[int, ...]]:
    """P1 such that some P2 gives P1·C·P2 = C, by checking column multisets directly."""
    c = spec.array()
    cols = sorted(map(tuple, c.T))
    out = set()
    for s in itertools.permutations(range(spec.p)):
        if sorted(map(tuple, c[list(s)].T)) == cols:
            out.add(s)
    return out


@pytest.mark.parametrize("seed", range(5))
def test_t_group_matches_brute_force(seed):
    s = generate_h(5, 3, 2, np.random.default_rng(seed))
    rep = enumerate_t_group(s)
    assert {g.images for g in rep.t_group} == brute_force_t_group(s)


def test_report_fields_p5():
    s = generate_h(5, 2, 3, np.random.default_rng(1))
    rep = enumerate_t_group(s)
    assert rep.aut_size <= 20 and rep.bound_ok
    assert rep.min_degree >= 4
    assert rep.contains_shift and not rep.two_transitive
    assert rep.k_size == 2 * rep.aut_size**2
    assert all(verify_automorphism(s, u) for u in rep.full)
    text = rep.format()
    assert "aut_size: " in text and text.endswith("\n")


def test_full_automorphisms_are_block_diagonal():
    s = generate_h(7, 3, 3, np.random.default_rng(5))
    rep = enumerate_t_group(s)
    for u in rep.full:
        assert sorted(u.images[:7]) == list(range(7))
        assert verify_automorphism(s, u)
    assert not verify_automorphism(s, Permutation.cycle(21))


def test_stack_orientation():
    s = generate_c(5, 2, 1, np.random.default_rng(0))
    rep = enumerate_t_group(s)
    assert rep.orientation == "stack"
    # a single weight-1 circulant is a permutation matrix: every σ has a partner
    assert rep.aut_size == math.factorial(5)
    assert all(verify_automorphism(s, u) for u in rep.full)
    assert rep.two_transitive


def test_enumeration_errors():
    with pytest.raises(ResourceBoundError):
        enumerate_t_group(generate_h(11, 2, 3, np.random.default_rng(0)))
    c = Circulant.from_first_column([2, 3, 1, 2, 3], 2)
    dup = ArraySpec(p=5, m=3, l=2, circulants=(c, c), a=1, b=2)
    with pytest.raises(StructureError):
        enumerate_t_group(dup)
    ones = StackSpec(p=3, m=3, t_r=1, circulants=(Circulant.identity(3), Circulant.identity(3)))
    with pytest.raises(StructureError):
        enumerate_t_group(ones)


def test_two_transitivity():
    s3 = [Permutation(p) for p in itertools.permutations(range(4))]
    assert is_two_transitive(s3)
    cyc = [Permutation(tuple((i + k) % 5 for i in range(5))) for k in range(5)]
    assert not is_two_transitive(cyc)
    # AGL_1(F_5) is sharply 2-transitive
    agl = [Permutation(tuple((a * i + b) % 5 for i in range(5))) for a in range(1, 5) for b in range(5)]
    assert is_two_transitive(agl)
    with pytest.raises(GroupError):
        is_two_transitive([Permutation((1, 0, 2)), Permutation((0, 2, 1))])
    with pytest.raises(GroupError):
        is_two_transitive([])


def test_min_degree():
    cyc = [Permutation(tuple((i + k) % 5 for i in range(5))) for k in range(5)]
    assert min_degree(cyc) == 5
    assert min_degree([Permutation((1, 0, 2)), Permutation.identity(3)]) == 2
    with pytest.raises(GroupError):
        min_degree([Permutation.identity(4)])


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(5, 2, 2), (5, 3, 3), (7, 2, 3)]))
def test_audit_properties(seed, params):
    p, m, l = params
    s = generate_h(p, m, l, np.random.default_rng(seed))
    rep = enumerate_t_group(s)
    assert rep.aut_size <= p * (p - 1)
    assert rep.min_degree >= p - 1
    assert rep.contains_shift
    assert not rep.two_transitive
    # T is a group
    group = {g.images for g in rep.t_group}
    for a, b in itertools.product(group, repeat=2):
        assert tuple(a[x] for x in b) in group


def test_quantum_threshold_and_premise():
    assert quantum_threshold(101, 35) >= 101
    assert quantum_threshold(101, 34) < 101
    q = quantum_premise(101, 35, 3, delta=1.0)
    assert q.holds
    assert math.isclose(q.a_required, 101**2 / (3535 * math.log2(3535)))
    assert q.premise_ok == (q.a_required <= 0.25)
    assert math.isclose(q.nominal_bound, 4 * 101**8 * math.exp(-101))
    assert q.measured_bound is None
    q = quantum_premise(5, 2, 3, aut_size=5, min_deg=10)
    assert math.isclose(q.measured_bound, (2 * 25) ** 2 * math.exp(-10))
    assert "measured_bound" in q.format()
