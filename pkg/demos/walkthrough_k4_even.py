"""Walk through the closed-form weighting for k = 4 and n = 22.

Prints the weighted classes, the character values the weights were solved
against, the extreme eigenvalues, and the resulting bound on intersecting
families of permutations acting on 4-subsets.
"""
from math import comb, factorial

from setwise_ekr.certify import certify, character_grid, low_dim_eigen_report
from setwise_ekr.partitions import format_partition
from setwise_ekr.schemes import full_spectrum
from setwise_ekr.weights import scheme_k4_even

n, k = 22, 4
scheme = scheme_k4_even(n)
print(f"Weighted derangement classes for n={n}, k={k}:")
for cls, w in scheme.entries:
    print(f"  ({format_partition(cls)})  weight {w}")
print(f"row sum {scheme.row_sum()} = C({n},{k}) - 1 = {comb(n, k) - 1}")

rows, cols, values = character_grid("k4-even", n)
print("\nCharacter values on those classes:")
for lam, vals in zip(rows, values):
    print(f"  [{format_partition(lam)}]".ljust(22), vals)

spectrum = full_spectrum(scheme)
print(f"\n{len(spectrum.values)} eigenvalues; max {spectrum.max_value}, min {spectrum.min_value}")
print("low-degree eigenvalues checked against the proof's list:")
for check in low_dim_eigen_report(spectrum, k):
    print("  " + check.describe())

cert = certify(n, k)
print("\n" + cert.summary())
print(f"k!(n-k)! = {factorial(k) * factorial(n - k)}")
