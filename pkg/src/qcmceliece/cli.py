"""Command-line front end.

Every randomized command takes ``--seed`` (64-bit unsigned) and feeds it
to numpy's PCG64 generator, so identical flags give identical output.
Exit codes: 0 success, 1 usage or file error, 2 parameter violation,
3 crypto failure, 4 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import autgroup, crypto, cryptanalysis, qcgen
from .errors import (
    CapacityError,
    DecodingFailure,
    QcError,
    ResourceBoundError,
)

EXIT_OK, EXIT_USAGE, EXIT_PARAM, EXIT_CRYPTO, EXIT_RESOURCE = 0, 1, 2, 3, 4
SEED_MAX = 2**64 - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v <= SEED_MAX:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _write(path: Optional[str], text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def _build_spec(args, rng):
    if args.orientation == "stack":
        if args.t_r is None:
            raise UsageError("--t-r is required for the stack orientation")
        return qcgen.generate_c(args.p, args.m, args.t_r, rng)
    return qcgen.generate_h(args.p, args.m, args.l, rng)


def _report_lines(spec) -> str:
    if isinstance(spec, qcgen.StackSpec):
        r = qcgen.check_stack_conditions(spec)
        fields = {
            "prime": r.prime,
            "invertible": r.invertible,
            "overlap": r.overlap,
            "weight_product": r.weight_product,
            "max_overlap": r.max_overlap,
            "column_weight": r.column_weight,
            "row_weight": r.row_weight,
            "ok": r.ok,
        }
    else:
        r = qcgen.check_array_conditions(spec)
        fields = {
            "prime": r.prime,
            "shape": r.shape,
            "extension": r.extension,
            "iv_prime": r.iv_prime,
            "distinct": r.distinct,
            "iv_direct": r.iv_direct,
            "projective": r.projective,
            "ok": r.ok,
        }
    out = []
    for k, v in fields.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif v is None:
            v = "skipped"
        out.append(f"{k}: {v}")
    return "\n".join(out) + "\n"


def cmd_construct(args, out) -> int:
    spec = _build_spec(args, _rng(args.seed))
    if args.out:
        Path(args.out).write_text(qcgen.format_spec(spec))
    else:
        out.write(qcgen.format_spec(spec))
    out.write(f"seed: {args.seed}\n")
    out.write(_report_lines(spec))
    return EXIT_OK


def cmd_keygen(args, out) -> int:
    rng = _rng(args.seed)
    if args.system == "nr":
        spec = qcgen.generate_h(args.p, args.m, args.l, rng)
        kp = crypto.nr_keygen(spec, args.t, rng)
    else:
        if args.t_r is None:
            raise UsageError("--t-r is required for McEliece keys")
        spec = qcgen.generate_c(args.p, args.m, args.t_r, rng)
        kp = crypto.me_keygen(spec, args.t, rng)
    Path(args.out).write_text(crypto.dump_keypair(kp))
    if args.pub:
        Path(args.pub).write_text(crypto.dump_public_key(kp.public))
    out.write(f"seed: {args.seed}\nsystem: {args.system}\nn: {kp.public.n}\n")
    return EXIT_OK


def cmd_encrypt(args, out) -> int:
    pub = crypto.load_public_key(Path(args.key).read_text())
    data = Path(args.input).read_bytes()
    blocks = crypto.encrypt_bytes(pub, data, _rng(args.seed))
    _write(args.out, crypto.format_ciphertext(pub, blocks, len(data)), out)
    return EXIT_OK


def cmd_decrypt(args, out) -> int:
    kp = crypto.load_keypair(Path(args.key).read_text())
    params, nbytes, blocks = crypto.parse_ciphertext(Path(args.input).read_text())
    pub = kp.public
    t = pub.t if isinstance(pub, crypto.NiederreiterPublicKey) else pub.errors
    if params != (pub.p, pub.m, pub.l, t):
        raise crypto.InvalidCiphertextError(f"ciphertext parameters {params} do not match the key")
    data = crypto.decrypt_bytes(kp, blocks, nbytes)
    Path(args.out).write_bytes(data)
    return EXIT_OK


def cmd_audit(args, out) -> int:
    spec = _build_spec(args, _rng(args.seed))
    rep = autgroup.enumerate_t_group(spec, max_p=args.max_p)
    verified = all(autgroup.verify_automorphism(spec, u) for u in rep.full)
    prem = autgroup.quantum_premise(spec.p, spec.m, spec.l, aut_size=rep.aut_size, min_deg=rep.min_degree)
    out.write(f"seed: {args.seed}\n")
    out.write(rep.format())
    out.write(f"automorphisms_verified: {str(verified).lower()}\n")
    out.write(prem.format())
    return EXIT_OK


def cmd_attack(args, out) -> int:
    rng = _rng(args.seed)
    spec = qcgen.generate_c(args.p, args.m, args.t_r, rng)
    kp = crypto.me_keygen(spec, args.errors, rng, strict=False)
    pt = rng.integers(0, 2, kp.public.k)
    c = crypto.me_encrypt(kp.public, pt, rng)
    wf = cryptanalysis.lee_brickell_workfactor(kp.public.n, kp.public.k, args.errors, args.j)
    if args.stern:
        res = cryptanalysis.stern_attack(kp.public, c, args.errors, rng, max_iters=args.max_iters)
        name = "stern"
    else:
        res = cryptanalysis.lee_brickell_attack(kp.public, c, args.errors, args.j, rng, args.max_iters, args.mode)
        name = "lee_brickell"
    out.write(f"seed: {args.seed}\nattack: {name}\nn: {kp.public.n}\nk: {kp.public.k}\nt: {args.errors}\n")
    out.write(f"success: {str(res.success).lower()}\niterations: {res.iterations}\n")
    if res.success:
        out.write(f"plaintext_match: {str(bool(np.array_equal(res.plaintext, pt))).lower()}\n")
    if not args.stern:
        out.write(f"expected_iterations: {float(wf.T):.6f}\nlog2_workfactor: {wf.log2_W:.4f}\n")
    return EXIT_OK


def _parse_rows(text: str) -> list[tuple[int, int, int, int]]:
    rows = []
    for chunk in text.split(";"):
        parts = [int(x) for x in chunk.split(",")]
        if len(parts) != 4:
            raise UsageError(f"row {chunk!r} must be security,p,t,l")
        rows.append(tuple(parts))
    return rows


def cmd_analyze(args, out) -> int:
    if args.keysizes:
        for n, k in ((1632, 1269), (2048, 1751), (2960, 2288)):
            out.write(f"keysize n={n} k={k}: {cryptanalysis.mceliece_keysize_bits(n, k)} bits\n")
    if args.table1:
        devs = cryptanalysis.published_comparison(args.l, args.symbols)
        rows = [d.computed for d in devs]
        out.write(cryptanalysis.format_rows_csv(rows) if args.csv else cryptanalysis.format_rows_text(rows))
        if not args.csv:
            out.write(cryptanalysis.format_deviations(devs))
    if args.rows:
        rows = cryptanalysis.param_report(_parse_rows(args.rows), args.symbols)
        out.write(cryptanalysis.format_rows_csv(rows) if args.csv else cryptanalysis.format_rows_text(rows))
    if not (args.keysizes or args.table1 or args.rows):
        raise UsageError("analyze needs --table1, --rows or --keysizes")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcmceliece", description="Quasi-cyclic McEliece/Niederreiter toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def structure(p, orientation=True):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--l", type=int, default=3)
        p.add_argument("--t-r", dest="t_r", type=int)
        p.add_argument("--seed", type=_seed, required=True)
        if orientation:
            p.add_argument("--orientation", choices=("stack", "array"), default="array")

    c = sub.add_parser("construct", help="build a structured matrix and report its conditions")
    structure(c)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    k = sub.add_parser("keygen", help="generate a key pair")
    k.add_argument("--system", choices=("nr", "me"), default="nr")
    structure(k, orientation=False)
    k.add_argument("--t", type=int, required=True, help="error weight")
    k.add_argument("--out", required=True, help="private key file")
    k.add_argument("--pub", help="public key file")
    k.set_defaults(func=cmd_keygen)

    e = sub.add_parser("encrypt", help="encrypt a byte file")
    e.add_argument("--key", required=True, help="public or private key file")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--out")
    e.add_argument("--seed", type=_seed, default=0, help="error sampling (McEliece)")
    e.set_defaults(func=cmd_encrypt)

    d = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    d.add_argument("--key", required=True)
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--out", required=True)
    d.set_defaults(func=cmd_decrypt)

    a = sub.add_parser("audit", help="brute-force automorphism audit")
    structure(a)
    a.add_argument("--max-p", dest="max_p", type=int, default=autgroup.DEFAULT_MAX_P)
    a.set_defaults(func=cmd_audit)

    t = sub.add_parser("attack", help="information-set decoding on a planted instance")
    t.add_argument("--p", type=int, default=13)
    t.add_argument("--m", type=int, default=2)
    t.add_argument("--t-r", dest="t_r", type=int, default=1)
    t.add_argument("--errors", type=int, default=1)
    t.add_argument("--j", type=int, default=1)
    t.add_argument("--seed", type=_seed, required=True)
    t.add_argument("--max-iters", dest="max_iters", type=int, default=10_000)
    t.add_argument("--mode", choices=("greedy", "uniform"), default="greedy")
    t.add_argument("--stern", action="store_true")
    t.set_defaults(func=cmd_attack)

    n = sub.add_parser("analyze", help="parameter table and key sizes")
    n.add_argument("--table1", action="store_true")
    n.add_argument("--rows", help="security,p,t,l;... custom rows")
    n.add_argument("--keysizes", action="store_true")
    n.add_argument("--l", type=int, default=3)
    n.add_argument("--symbols", choices=("field", "nonzero"), default="field")
    n.add_argument("--csv", action="store_true")
    n.set_defaults(func=cmd_analyze)
    return parser


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, (UsageError, OSError)):
        return EXIT_USAGE
    if isinstance(exc, ResourceBoundError):
        return EXIT_RESOURCE
    if isinstance(exc, CapacityError) and isinstance(exc.__cause__, ResourceBoundError):
        return EXIT_RESOURCE
    if isinstance(exc, DecodingFailure):
        return EXIT_CRYPTO
    if isinstance(exc, (QcError, ValueError)):
        return EXIT_PARAM
    raise exc


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:
        code = exit_code(exc)
        label = "invalid ciphertext" if code == EXIT_CRYPTO else type(exc).__name__
        err.write(f"error: {label}: {exc}\n")
        return code


def main() -> None:
    sys.exit(run())
