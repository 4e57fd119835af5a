"""Arithmetic in GF(2^l) and in the ring of p x p circulants."""
import numpy as np

from qcmceliece import Circulant, gf
from qcmceliece.circulant import circ_is_invertible, crt_applicable

F = gf(3)
print("GF(8) elements:", F.elements().tolist())
print("3 * 5 =", F.mul(3, 5))
print("inverse of 6 is", F.inv(6), "and 6 * inv(6) =", F.mul(6, F.inv(6)))

print("\nA circulant is fixed by its first row; every other row is a right shift.")
a = Circulant(np.array([1, 1, 0, 1, 0]))
print(a.expand())

print("\nMultiplying circulants is multiplying polynomials mod x^p - 1.")
b = Circulant(np.array([0, 1, 0, 0, 0]))  # x
print("first row of a*b:", (a * b).first_row.tolist(), "(a shifted by one)")

print("\nInvertibility: rank test everywhere, CRT shortcut when 2 is primitive mod p.")
for row in ([1, 1] + [0] * 11, [1, 1, 1] + [0] * 10):
    c = Circulant(np.array(row))
    print(f"p=13 weight-{c.weight()}: crt applicable {crt_applicable(c)},",
          "rank says", circ_is_invertible(c), "crt says", circ_is_invertible(c, method="crt"))
