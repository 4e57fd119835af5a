"""Recompute the parameter table and compare with the published values."""
from qcmceliece.cryptanalysis import format_deviations, format_rows_text, mceliece_keysize_bits, published_comparison

devs = published_comparison()
print(format_rows_text([d.computed for d in devs]))
print(format_deviations(devs))

print("Classic McEliece key sizes for reference:")
for n, k in ((1632, 1269), (2048, 1751), (2960, 2288)):
    print(f"  n={n} k={k}: {mceliece_keysize_bits(n, k)} bits")
