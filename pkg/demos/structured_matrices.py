"""Generate the two structured matrix families and check their conditions."""
import numpy as np

from qcmceliece.qcgen import check_array_conditions, check_stack_conditions, format_spec, generate_c, generate_h

rng = np.random.default_rng(1)

print("Stacked binary circulants with pairwise-distinct support differences:")
stack = generate_c(29, 2, 3, rng)
print("supports:", stack.supports())
print(check_stack_conditions(stack))
print("generator shape:", stack.generator().shape)

print("\nArray of circulants over GF(8), with one a/b pair in the first block:")
array = generate_h(5, 2, 3, np.random.default_rng(3))
print(array.parity())
print(check_array_conditions(array))

print("\nBoth serialize to a small text format:")
print(format_spec(array))
