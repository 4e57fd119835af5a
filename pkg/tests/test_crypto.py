import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_matmul
from qcmceliece.codes import LinearCode, error_capacity, min_distance_bruteforce
from qcmceliece.crypto import (
    McEliecePublicKey,
    NiederreiterPublicKey,
    block_radix,
    cw_count,
    cw_rank,
    cw_unrank,
    decrypt_bytes,
    dump_keypair,
    dump_public_key,
    encrypt_bytes,
    format_ciphertext,
    load_keypair,
    load_public_key,
    me_decrypt,
    me_encrypt,
    me_keygen,
    nr_decrypt,
    nr_encrypt,
    nr_keygen,
    parse_ciphertext,
)
from qcmceliece.errors import (
    CapacityError,
    DimensionError,
    InvalidCiphertextError,
    ParameterError,
    WeightError,
)
from qcmceliece.field import MODULI
from qcmceliece.linalg import mat_mul, rank
from qcmceliece.qcgen import generate_c, generate_h


@pytest.fixture(scope="module")
def nr_pair():
    r = np.random.default_rng(9)
    return nr_keygen(generate_h(5, 2, 3, r), 1, r)


@pytest.fixture(scope="module")
def me_pair():
    r = np.random.default_rng(2)
    return me_keygen(generate_c(29, 2, 3, np.random.default_rng(1)), 1, r)


def test_nr_keygen_structure(nr_pair):
    kp = nr_pair
    assert kp.public.h_pub.shape == (5, 10)
    expect = mat_mul(mat_mul(kp.s, kp.h, 3), kp.perm.matrix(), 3)
    assert np.array_equal(kp.public.h_pub, expect)
    assert rank(kp.public.h_pub, 3) == 5


def test_nr_degenerate():
    r = np.random.default_rng(0)
    spec = generate_h(5, 2, 3, r)
    kp = nr_keygen(spec, 1, r, degenerate=True)
    assert np.array_equal(kp.public.h_pub, spec.parity())


def test_nr_encrypt_examples(nr_pair):
    pub = nr_pair.public
    assert not nr_encrypt(pub, np.zeros(10, dtype=np.int64)).any()
    for i in range(10):
        e = np.zeros(10, dtype=np.int64)
        e[i] = 1
        assert np.array_equal(nr_encrypt(pub, e), pub.h_pub[:, i])
    v = np.zeros(10, dtype=np.int64)
    v[4] = 6
    assert np.array_equal(nr_encrypt(pub, v), naive_matmul(pub.h_pub, v[:, None], MODULI[3])[:, 0])
    with pytest.raises(WeightError):
        nr_encrypt(pub, np.array([1, 1] + [0] * 8))
    with pytest.raises(DimensionError):
        nr_encrypt(pub, np.zeros(9, dtype=np.int64))


def test_nr_roundtrip_all_weight_one(nr_pair):
    assert not nr_decrypt(nr_pair, np.zeros(5, dtype=np.int64)).any()
    for i in range(cw_count(10, 1, 3)):
        pt = cw_unrank(i, 10, 1, 3)
        assert np.array_equal(nr_decrypt(nr_pair, nr_encrypt(nr_pair.public, pt)), pt)


def test_nr_tampered_ciphertext(nr_pair):
    reachable = {bytes(nr_encrypt(nr_pair.public, cw_unrank(i, 10, 1, 3)).astype(np.uint8)) for i in range(70)}
    reachable.add(bytes(5))
    # complement of the syndrome table, pulled back through S
    for c in itertools.product(range(8), repeat=5):
        if bytes(np.array(c, dtype=np.uint8)) not in reachable:
            with pytest.raises(InvalidCiphertextError):
                nr_decrypt(nr_pair, np.array(c))
            break


@pytest.mark.parametrize("seed", range(4))
def test_nr_capacity_matches_measured_distance(seed):
    r = np.random.default_rng(seed)
    spec = generate_h(5, 2, 3, r)
    cap = error_capacity(min_distance_bruteforce(LinearCode(parity=spec.parity(), l=3)))
    assert cap >= 1
    kp = nr_keygen(spec, cap, r)
    assert kp.decoder.unique
    with pytest.raises(CapacityError):
        nr_keygen(spec, cap + 1, r)


def test_public_key_hides_structure():
    hidden = 0
    for seed in range(100):
        r = np.random.default_rng(seed)
        kp = nr_keygen(generate_h(5, 2, 3, r), 1, r)
        h = kp.public.h_pub
        left, right = h[:, :5], h[:, 5:]
        looks_structured = np.array_equal(left, np.eye(5, dtype=np.int64)) and all(
            np.array_equal(np.roll(right[0], i), right[i]) for i in range(5)
        )
        hidden += not looks_structured
    assert hidden >= 95


def test_me_keygen_structure(me_pair):
    kp = me_pair
    assert kp.public.g_pub.shape == (29, 58)
    expect = mat_mul(mat_mul(kp.s, kp.g, 1), kp.perm.matrix(), 1)
    assert np.array_equal(kp.public.g_pub, expect)
    assert rank(kp.public.g_pub, 1) == 29


def test_me_p13_dimensions_and_capacity():
    spec = generate_c(13, 2, 1, np.random.default_rng(2))
    r = np.random.default_rng(2)
    kp = me_keygen(spec, 0, r)
    assert kp.public.g_pub.shape == (13, 26)
    # weight-1 circulant: d = 2, so one error is not uniquely correctable
    with pytest.raises(CapacityError):
        me_keygen(spec, 1, r)
    loose = me_keygen(spec, 1, r, strict=False)
    assert not loose.decoder.unique


def test_me_degenerate_and_zero_errors():
    spec = generate_c(29, 2, 3, np.random.default_rng(1))
    r = np.random.default_rng(0)
    kp = me_keygen(spec, 0, r, degenerate=True)
    assert np.array_equal(kp.public.g_pub, spec.generator())
    pt = r.integers(0, 2, 29)
    assert np.array_equal(me_encrypt(kp.public, pt, r), mat_mul(pt, kp.public.g_pub, 1))


def test_me_encrypt_error_weight(me_pair):
    r = np.random.default_rng(5)
    c, e = me_encrypt(me_pair.public, np.zeros(29, dtype=np.int64), r, return_error=True)
    assert np.array_equal(c, e) and e.sum() == 1
    pt = r.integers(0, 2, 29)
    c, e = me_encrypt(me_pair.public, pt, r, return_error=True)
    assert np.count_nonzero(c ^ mat_mul(pt, me_pair.public.g_pub, 1)) == 1
    with pytest.raises(DimensionError):
        me_encrypt(me_pair.public, np.zeros(3, dtype=np.int64), r)


def test_me_roundtrip_all_single_errors(me_pair):
    r = np.random.default_rng(8)
    pt = r.integers(0, 2, 29)
    base = mat_mul(pt, me_pair.public.g_pub, 1)
    assert np.array_equal(me_decrypt(me_pair, base), pt)
    for i in range(58):
        c = base.copy()
        c[i] ^= 1
        assert np.array_equal(me_decrypt(me_pair, c), pt)


def test_me_overweight_error_flagged(me_pair):
    r = np.random.default_rng(3)
    pt = r.integers(0, 2, 29)
    base = mat_mul(pt, me_pair.public.g_pub, 1)
    outcomes = {"fail": 0, "wrong": 0, "right": 0}
    for i, j in itertools.combinations(range(58), 2):
        c = base.copy()
        c[[i, j]] ^= 1
        try:
            got = me_decrypt(me_pair, c)
        except InvalidCiphertextError:
            outcomes["fail"] += 1
            continue
        outcomes["right" if np.array_equal(got, pt) else "wrong"] += 1
    assert outcomes["fail"] > 0
    assert outcomes["right"] == 0


@pytest.mark.parametrize("seed", range(3))
def test_random_roundtrips(seed):
    r = np.random.default_rng(100 + seed)
    kp = nr_keygen(generate_h(7, 3, 2, r), 1, r)
    total = cw_count(21, 1, 2)
    for _ in range(50):
        pt = cw_unrank(int(r.integers(total)), 21, 1, 2)
        assert np.array_equal(nr_decrypt(kp, nr_encrypt(kp.public, pt)), pt)


def test_codec_examples():
    assert cw_unrank(0, 4, 1, 1).tolist() == [1, 0, 0, 0]
    assert cw_count(6, 2, 2) == 135 == comb(6, 2) * 9
    seen = set()
    for i in range(135):
        v = cw_unrank(i, 6, 2, 2)
        assert np.count_nonzero(v) == 2
        assert cw_rank(v, 2, 2) == i
        seen.add(tuple(v))
    assert len(seen) == 135
    # frozen orderings
    assert cw_unrank(5, 6, 2, 2).tolist() == [2, 3, 0, 0, 0, 0]
    assert cw_rank(np.array([0, 2, 0, 3, 0, 0]), 2, 2) == 41


def test_codec_errors():
    with pytest.raises(ParameterError):
        cw_unrank(135, 6, 2, 2)
    with pytest.raises(ParameterError):
        cw_unrank(-1, 6, 2, 2)
    with pytest.raises(WeightError):
        cw_rank(np.array([1, 1, 1, 0]), 2, 1)
    with pytest.raises(ParameterError):
        cw_rank(np.array([4, 0]), 1, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 40), st.integers(0, 5), st.integers(1, 4), st.data())
def test_codec_bijection_property(n, t, l, data):
    t = min(t, n)
    idx = data.draw(st.integers(0, cw_count(n, t, l) - 1))
    v = cw_unrank(idx, n, t, l)
    assert np.count_nonzero(v) == t and v.max(initial=0) < 2**l
    assert cw_rank(v, t, l) == idx


def test_key_file_roundtrip(nr_pair, me_pair):
    for kp in (nr_pair, me_pair):
        text = dump_keypair(kp)
        back = load_keypair(text)
        assert type(back) is type(kp)
        assert np.array_equal(back.s, kp.s) and back.perm == kp.perm
        pub_full = load_public_key(text)
        pub_only = load_public_key(dump_public_key(kp.public))
        for pub in (pub_full, pub_only):
            mat = pub.h_pub if isinstance(pub, NiederreiterPublicKey) else pub.g_pub
            ref = kp.public.h_pub if isinstance(pub, NiederreiterPublicKey) else kp.public.g_pub
            assert np.array_equal(mat, ref)
    head = dump_keypair(nr_pair).splitlines()[:2]
    assert head == ["QCNR v1", "5 2 3 1"]
    assert dump_keypair(me_pair).splitlines()[:2] == ["QCME v1", "29 2 1 1"]
    with pytest.raises(ParameterError):
        load_keypair("QCXX v1\n1 1 1 1\n")


def test_key_file_detects_mismatched_spec(nr_pair):
    lines = dump_keypair(nr_pair).splitlines()
    # flip an entry of the stored structured matrix (it starts after S)
    s_rows = int(lines[2].split()[0])
    row = 2 + 1 + s_rows + 1
    toks = lines[row].split()
    toks[-1] = format(int(toks[-1], 16) ^ 1, "x")
    lines[row] = " ".join(toks)
    with pytest.raises(ParameterError):
        load_keypair("\n".join(lines))


@settings(max_examples=25, deadline=None)
@given(st.binary(max_size=64), st.integers(0, 2**32 - 1))
def test_byte_framing_roundtrip(nr_pair, me_pair, data, seed):
    r = np.random.default_rng(seed)
    for kp in (nr_pair, me_pair):
        blocks = encrypt_bytes(kp.public, data, r)
        text = format_ciphertext(kp.public, blocks, len(data))
        params, nbytes, parsed = parse_ciphertext(text)
        assert nbytes == len(data)
        assert decrypt_bytes(kp, parsed, nbytes) == data


def test_framing_details(nr_pair):
    assert block_radix(nr_pair.public) == 70
    assert encrypt_bytes(nr_pair.public, b"", None) == []
    # leading zero bytes survive
    blocks = encrypt_bytes(nr_pair.public, b"\x00\x00\x01", None)
    assert decrypt_bytes(nr_pair, blocks, 3) == b"\x00\x00\x01"
    with pytest.raises(InvalidCiphertextError):
        decrypt_bytes(nr_pair, blocks[:-1], 3)
    with pytest.raises(InvalidCiphertextError):
        decrypt_bytes(nr_pair, [np.zeros(4, dtype=np.int64)] * len(blocks), 3)
    with pytest.raises(InvalidCiphertextError):
        parse_ciphertext("5 2 3 1\nlength 3\n")


def test_ciphertext_length_overhead(nr_pair, me_pair):
    r = np.random.default_rng(0)
    pt = cw_unrank(3, 10, 1, 3)
    assert nr_encrypt(nr_pair.public, pt).shape == (5,)
    assert me_encrypt(me_pair.public, np.zeros(29, dtype=np.int64), r).shape == (58,)
    assert isinstance(me_pair.public, McEliecePublicKey)
