"""Binary McEliece on a stacked-circulant code, then information-set attacks on it."""
import numpy as np

from qcmceliece.cryptanalysis import lee_brickell_attack, lee_brickell_workfactor, stern_attack
from qcmceliece.crypto import me_decrypt, me_encrypt, me_keygen
from qcmceliece.qcgen import generate_c

rng = np.random.default_rng(4)
kp = me_keygen(generate_c(29, 2, 3, np.random.default_rng(1)), 1, rng)
pt = rng.integers(0, 2, kp.public.k)
c, e = me_encrypt(kp.public, pt, rng, return_error=True)
print("error position:", np.flatnonzero(e).tolist())
print("decrypts correctly:", np.array_equal(me_decrypt(kp, c), pt))

wf = lee_brickell_workfactor(kp.public.n, kp.public.k, 1, 1)
print(f"\nLee-Brickell j=1: expected iterations {float(wf.T):.2f}, log2 W = {wf.log2_W:.2f}")
res = lee_brickell_attack(kp.public, c, 1, 1, rng)
print("attack success:", res.success, "after", res.iterations, "iteration(s)")
print("recovered plaintext matches:", np.array_equal(res.plaintext, pt))

res = stern_attack(kp.public, c, 1, rng)
print("\nStern success:", res.success, "after", res.iterations, "iteration(s)")
