"""Niederreiter over GF(8): keys, a weight-1 plaintext, and byte framing."""
import numpy as np

from qcmceliece.crypto import decrypt_bytes, encrypt_bytes, nr_decrypt, nr_encrypt, nr_keygen
from qcmceliece.qcgen import generate_h

rng = np.random.default_rng(7)
kp = nr_keygen(generate_h(5, 2, 3, rng), 1, rng)
print("public parity-check matrix (scrambled and permuted):")
print(kp.public.h_pub)

pt = np.zeros(10, dtype=np.int64)
pt[6] = 5
c = nr_encrypt(kp.public, pt)
print("\nplaintext", pt.tolist(), "-> syndrome", c.tolist())
print("decrypted", nr_decrypt(kp, c).tolist())

msg = b"circulant"
blocks = encrypt_bytes(kp.public, msg, rng)
print(f"\n{len(msg)} bytes became {len(blocks)} syndromes; decrypts to", decrypt_bytes(kp, blocks, len(msg)))
