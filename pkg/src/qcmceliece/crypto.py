"""McEliece and Niederreiter encryption over the quasi-cyclic key matrices.

Niederreiter keys come from an :class:`~qcmceliece.qcgen.ArraySpec`
(parity check H over GF(2^l)), McEliece keys from a
:class:`~qcmceliece.qcgen.StackSpec` (binary generator M).  Public keys
are H' = S·H·P and M' = S·M·P.  The private decoder is an exhaustive
syndrome table, so key generation refuses error weights the structured
code cannot uniquely correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

from .codes import SyndromeDecoder, build_syndrome_decoder, hamming_weight, parity_from_generator
from .errors import (
    CapacityError,
    DecodingFailure,
    DimensionError,
    InvalidCiphertextError,
    ParameterError,
    ResourceBoundError,
    WeightError,
)
from .field import gf
from .linalg import (
    Permutation,
    format_matrix,
    format_vector,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    parse_vector,
    read_matrix_block,
    sample_permutation,
    sample_scrambler,
    solve_right,
    vec_mat,
)
from .qcgen import ArraySpec, StackSpec, format_spec, parse_spec

NR_HEADER = "QCNR v1"
ME_HEADER = "QCME v1"


@dataclass(frozen=True, eq=False)
class NiederreiterPublicKey:
    h_pub: np.ndarray
    t: int
    p: int
    m: int
    l: int

    @property
    def n(self) -> int:
        return self.h_pub.shape[1]


@dataclass(frozen=True, eq=False)
class NiederreiterKeyPair:
    spec: ArraySpec
    s: np.ndarray
    h: np.ndarray
    perm: Permutation
    decoder: SyndromeDecoder
    public: NiederreiterPublicKey


@dataclass(frozen=True, eq=False)
class McEliecePublicKey:
    g_pub: np.ndarray
    errors: int
    p: int
    m: int
    l: int = 1

    @property
    def k(self) -> int:
        return self.g_pub.shape[0]

    @property
    def n(self) -> int:
        return self.g_pub.shape[1]


@dataclass(frozen=True, eq=False)
class McElieceKeyPair:
    spec: StackSpec
    s: np.ndarray
    g: np.ndarray
    perm: Permutation
    decoder: SyndromeDecoder
    public: McEliecePublicKey


def _decoder(h: np.ndarray, t: int, l: int, strict: bool = True) -> SyndromeDecoder:
    try:
        dec = build_syndrome_decoder(h, t, l)
    except ResourceBoundError as exc:
        raise CapacityError(f"t={t} needs a syndrome table beyond the configured bound") from exc
    if strict and not dec.unique:
        raise CapacityError(f"t={t} exceeds the correction capacity of the private code")
    return dec


def nr_keygen(
    spec: ArraySpec, t: int, rng: np.random.Generator, degenerate: bool = False, strict: bool = True
) -> NiederreiterKeyPair:
    """Niederreiter key pair; ``degenerate`` forces S = I and P = I (test hook).

    With ``strict=False`` a t beyond unique-decoding capacity is accepted and
    the decoder breaks ties toward the first-enumerated error pattern.
    """
    h = spec.parity()
    r, n = h.shape
    dec = _decoder(h, t, spec.l, strict)
    if degenerate:
        s, perm = identity(r), Permutation.identity(n)
    else:
        s = sample_scrambler(r, spec.l, rng)
        perm = sample_permutation(n, rng)
    h_pub = perm.apply_columns(mat_mul(s, h, spec.l))
    pub = NiederreiterPublicKey(h_pub=h_pub, t=t, p=spec.p, m=spec.m, l=spec.l)
    return NiederreiterKeyPair(spec=spec, s=s, h=h, perm=perm, decoder=dec, public=pub)


def nr_encrypt(pub: NiederreiterPublicKey, pt) -> np.ndarray:
    pt = np.asarray(pt, dtype=np.int64)
    if pt.shape != (pub.n,):
        raise DimensionError(f"plaintext must have length {pub.n}")
    if hamming_weight(pt) > pub.t:
        raise WeightError(f"plaintext weight {hamming_weight(pt)} exceeds t={pub.t}")
    return mat_vec(pub.h_pub, pt, pub.l)


def nr_decrypt(kp: NiederreiterKeyPair, c) -> np.ndarray:
    l = kp.public.l
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (kp.h.shape[0],):
        raise DimensionError(f"ciphertext must have length {kp.h.shape[0]}")
    y = mat_vec(inverse(kp.s, l), c, l)
    z = solve_right(kp.h, y, l)
    try:
        _, e = kp.decoder.decode(z)
    except DecodingFailure as exc:
        raise InvalidCiphertextError("ciphertext does not decode") from exc
    # y = H·P·ptᵀ, so e = (P·ptᵀ)ᵀ and pt = e·P
    return kp.perm.apply_columns(e)


def me_keygen(
    spec: StackSpec, errors: int, rng: np.random.Generator, degenerate: bool = False, strict: bool = True
) -> McElieceKeyPair:
    g = spec.generator()
    k, n = g.shape
    h = parity_from_generator(g, spec.l)
    dec = _decoder(h, errors, spec.l, strict)
    if degenerate:
        s, perm = identity(k), Permutation.identity(n)
    else:
        s = sample_scrambler(k, spec.l, rng)
        perm = sample_permutation(n, rng)
    g_pub = perm.apply_columns(mat_mul(s, g, spec.l))
    pub = McEliecePublicKey(g_pub=g_pub, errors=errors, p=spec.p, m=spec.m, l=spec.l)
    return McElieceKeyPair(spec=spec, s=s, g=g, perm=perm, decoder=dec, public=pub)


def random_error(n: int, weight: int, l: int, rng: np.random.Generator) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    pos = rng.choice(n, size=weight, replace=False)
    e[pos] = gf(l).random_nonzero(rng, size=weight)
    return e


def me_encrypt(pub: McEliecePublicKey, pt, rng: np.random.Generator, return_error: bool = False):
    """c = pt·M' + e with e of weight exactly ``pub.errors``."""
    pt = np.asarray(pt, dtype=np.int64)
    if pt.shape != (pub.k,):
        raise DimensionError(f"plaintext must have length {pub.k}")
    e = random_error(pub.n, pub.errors, pub.l, rng)
    c = vec_mat(pt, pub.g_pub, pub.l) ^ e
    return (c, e) if return_error else c


def me_decrypt(kp: McElieceKeyPair, c) -> np.ndarray:
    l = kp.public.l
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (kp.g.shape[1],):
        raise DimensionError(f"ciphertext must have length {kp.g.shape[1]}")
    # c·P⁻¹ = pt·S·M + e·P⁻¹
    y = kp.perm.inverse().apply_columns(c)
    try:
        word, _ = kp.decoder.decode(y)
    except DecodingFailure as exc:
        raise InvalidCiphertextError("ciphertext does not decode") from exc
    k = kp.g.shape[0]
    ps = word[:k]  # M = [I | C] is systematic
    return vec_mat(ps, inverse(kp.s, l), l)


# --- constant-weight codec ---------------------------------------------------


def cw_count(n: int, t: int, l: int) -> int:
    return comb(n, t) * ((1 << l) - 1) ** t


def cw_unrank(index: int, n: int, t: int, l: int) -> np.ndarray:
    """The index-th weight-t vector of length n over GF(2^l).

    Supports are ordered by the combinatorial number system (colex), then
    the nonzero values by a mixed-radix count, first position most
    significant.
    """
    total = cw_count(n, t, l)
    if not 0 <= index < total:
        raise ParameterError(f"index {index} outside [0, {total})")
    radix = (1 << l) - 1
    sup_rank, val_rank = divmod(index, radix**t)
    support = []
    rem = sup_rank
    for i in range(t, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rem:
            c += 1
        support.append(c)
        rem -= comb(c, i)
    support.reverse()
    values = []
    for _ in range(t):
        val_rank, d = divmod(val_rank, radix)
        values.append(d + 1)
    values.reverse()
    v = np.zeros(n, dtype=np.int64)
    v[support] = values
    return v


def cw_rank(v, t: Optional[int] = None, l: int = 1) -> int:
    v = np.asarray(v, dtype=np.int64)
    support = [int(i) for i in np.nonzero(v)[0]]
    if t is not None and len(support) != t:
        raise WeightError(f"expected weight {t}, got {len(support)}")
    t = len(support)
    radix = (1 << l) - 1
    if np.any(v >= 1 << l):
        raise ParameterError(f"entries outside GF(2^{l})")
    sup_rank = sum(comb(c, i + 1) for i, c in enumerate(support))
    val_rank = 0
    for pos in support:
        val_rank = val_rank * radix + int(v[pos]) - 1
    return sup_rank * radix**t + val_rank


# --- file formats ------------------------------------------------------------


def _params_line(p: int, m: int, l: int, t: int) -> str:
    return f"{p} {m} {l} {t}"


def dump_keypair(kp: NiederreiterKeyPair | McElieceKeyPair) -> str:
    """Private key file: header, ``p m l t``, S, structured matrix, P, public matrix, spec."""
    if isinstance(kp, NiederreiterKeyPair):
        header, t, struct, pub = NR_HEADER, kp.public.t, kp.h, kp.public.h_pub
    else:
        header, t, struct, pub = ME_HEADER, kp.public.errors, kp.g, kp.public.g_pub
    pk = kp.public
    parts = [
        header + "\n",
        _params_line(pk.p, pk.m, pk.l, t) + "\n",
        format_matrix(kp.s, pk.l),
        format_matrix(struct, pk.l),
        kp.perm.format() + "\n",
        format_matrix(pub, pk.l),
        format_spec(kp.spec),
    ]
    return "".join(parts)


def load_keypair(text: str) -> NiederreiterKeyPair | McElieceKeyPair:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].strip()
    if header not in (NR_HEADER, ME_HEADER):
        raise ParameterError(f"unknown key header {header!r}")
    p, m, l, t = (int(x) for x in lines[1].split())
    s, _, i = read_matrix_block(lines, 2)
    struct, _, i = read_matrix_block(lines, i)
    perm = Permutation.parse(lines[i])
    pub, _, i = read_matrix_block(lines, i + 1)
    spec = parse_spec("\n".join(lines[i:]))
    if header == NR_HEADER:
        if not np.array_equal(spec.parity(), struct):
            raise ParameterError("key file: parity matrix does not match its spec")
        dec = _decoder(struct, t, l)
        pk = NiederreiterPublicKey(h_pub=pub, t=t, p=p, m=m, l=l)
        return NiederreiterKeyPair(spec=spec, s=s, h=struct, perm=perm, decoder=dec, public=pk)
    if not np.array_equal(spec.generator(), struct):
        raise ParameterError("key file: generator does not match its spec")
    dec = _decoder(parity_from_generator(struct, l), t, l)
    pk = McEliecePublicKey(g_pub=pub, errors=t, p=p, m=m, l=l)
    return McElieceKeyPair(spec=spec, s=s, g=struct, perm=perm, decoder=dec, public=pk)


def dump_public_key(pub: NiederreiterPublicKey | McEliecePublicKey) -> str:
    """Public key file: header with ``-pub`` suffix, ``p m l t``, public matrix."""
    if isinstance(pub, NiederreiterPublicKey):
        header, t, mat = NR_HEADER, pub.t, pub.h_pub
    else:
        header, t, mat = ME_HEADER, pub.errors, pub.g_pub
    return f"{header} public\n{_params_line(pub.p, pub.m, pub.l, t)}\n" + format_matrix(mat, pub.l)


def load_public_key(text: str) -> NiederreiterPublicKey | McEliecePublicKey:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    header = " ".join(head[:2])
    if header not in (NR_HEADER, ME_HEADER):
        raise ParameterError(f"unknown key header {lines[0]!r}")
    p, m, l, t = (int(x) for x in lines[1].split())
    if len(head) == 2:
        # a full key file: public matrix follows S, the structured matrix and P
        _, _, i = read_matrix_block(lines, 2)
        _, _, i = read_matrix_block(lines, i)
        mat, _, _ = read_matrix_block(lines, i + 1)
    else:
        mat, _, _ = read_matrix_block(lines, 2)
    if header == NR_HEADER:
        return NiederreiterPublicKey(h_pub=mat, t=t, p=p, m=m, l=l)
    return McEliecePublicKey(g_pub=mat, errors=t, p=p, m=m, l=l)


# --- byte-message framing ----------------------------------------------------


def block_radix(pub: NiederreiterPublicKey | McEliecePublicKey) -> int:
    """Number of distinct messages one ciphertext block carries."""
    if isinstance(pub, NiederreiterPublicKey):
        return cw_count(pub.n, pub.t, pub.l)
    return 1 << (pub.l * pub.k)


def _digits(data: bytes, radix: int) -> list[int]:
    """``data`` as a big-endian integer, written with the fewest base-``radix`` digits that cover 256^len."""
    if radix < 2:
        raise ParameterError("a block must carry at least two messages")
    value = int.from_bytes(data, "big")
    count, cap = 0, 1
    while cap < 256 ** len(data):
        cap *= radix
        count += 1
    out = []
    for _ in range(count):
        value, d = divmod(value, radix)
        out.append(d)
    return out[::-1]


def _undigits(digits: list[int], radix: int, nbytes: int) -> bytes:
    value = 0
    for d in digits:
        value = value * radix + d
    if value >= 256**nbytes:
        raise InvalidCiphertextError("decoded value does not fit the declared length")
    return value.to_bytes(nbytes, "big")


def _symbols(value: int, length: int, l: int) -> np.ndarray:
    mask = (1 << l) - 1
    return np.array([(value >> (l * (length - 1 - i))) & mask for i in range(length)], dtype=np.int64)


def _unsymbols(v: np.ndarray, l: int) -> int:
    value = 0
    for x in v:
        value = (value << l) | int(x)
    return value


def encrypt_bytes(pub: NiederreiterPublicKey | McEliecePublicKey, data: bytes, rng: np.random.Generator) -> list[np.ndarray]:
    radix = block_radix(pub)
    blocks = []
    for d in _digits(data, radix):
        if isinstance(pub, NiederreiterPublicKey):
            blocks.append(nr_encrypt(pub, cw_unrank(d, pub.n, pub.t, pub.l)))
        else:
            blocks.append(me_encrypt(pub, _symbols(d, pub.k, pub.l), rng))
    return blocks


def decrypt_bytes(kp: NiederreiterKeyPair | McElieceKeyPair, blocks: list[np.ndarray], nbytes: int) -> bytes:
    pub = kp.public
    radix = block_radix(pub)
    digits = []
    width = kp.h.shape[0] if isinstance(kp, NiederreiterKeyPair) else kp.g.shape[1]
    for c in blocks:
        if np.shape(c) != (width,):
            raise InvalidCiphertextError(f"ciphertext block must have {width} symbols")
        if isinstance(kp, NiederreiterKeyPair):
            pt = nr_decrypt(kp, c)
            if hamming_weight(pt) != pub.t:
                raise InvalidCiphertextError("decrypted block does not have the codec weight")
            digits.append(cw_rank(pt, pub.t, pub.l))
        else:
            digits.append(_unsymbols(me_decrypt(kp, c), pub.l))
    if len(digits) != len(_digits(bytes(nbytes), radix)):
        raise InvalidCiphertextError("block count does not match the declared length")
    return _undigits(digits, radix, nbytes)


def format_ciphertext(pub: NiederreiterPublicKey | McEliecePublicKey, blocks: list[np.ndarray], nbytes: int) -> str:
    """``p m l t`` line, ``bytes <n>`` line, then one hex vector per block."""
    t = pub.t if isinstance(pub, NiederreiterPublicKey) else pub.errors
    lines = [_params_line(pub.p, pub.m, pub.l, t), f"bytes {nbytes}"]
    lines += [format_vector(c, pub.l) for c in blocks]
    return "\n".join(lines) + "\n"


def parse_ciphertext(text: str) -> tuple[tuple[int, int, int, int], int, list[np.ndarray]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise InvalidCiphertextError("truncated ciphertext file")
    try:
        p, m, l, t = (int(x) for x in lines[0].split())
        key, val = lines[1].split()
        if key != "bytes":
            raise ValueError(key)
        nbytes = int(val)
        blocks = [parse_vector(ln, l) for ln in lines[2:]]
    except ValueError as exc:
        raise InvalidCiphertextError(f"malformed ciphertext file: {exc}") from exc
    return (p, m, l, t), nbytes, blocks
