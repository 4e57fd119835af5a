"""Brute-force the row-side permutation group of a small structured matrix."""
import numpy as np

from qcmceliece.autgroup import enumerate_t_group, quantum_premise
from qcmceliece.qcgen import generate_h

spec = generate_h(7, 3, 3, np.random.default_rng(5))
rep = enumerate_t_group(spec)
print(rep.format())
print("group elements (as image tuples):")
for g in rep.t_group:
    print(" ", g.images)

print("\nPremise check with the measured group in place of the nominal bound:")
print(quantum_premise(7, 3, 3, aut_size=rep.aut_size, min_deg=rep.min_degree).format())
