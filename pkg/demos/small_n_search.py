"""Weightings found by exact LP search where no closed form applies.

For small n the weights come from a linear feasibility problem over the
even derangement classes. The n = 6 case is small enough to build the full
720 x 720 weighted matrix and compare its trace moments with the spectrum.
"""
from setwise_ekr.brute import matrix_moment_oracle
from setwise_ekr.certify import certify_scheme
from setwise_ekr.partitions import format_partition
from setwise_ekr.weights import feasibility_search

for n, k in [(6, 3), (9, 4), (11, 5)]:
    result = feasibility_search(n, k, even_only=True)
    print(f"n={n} k={k}: search {result.status}")
    for cls, w in result.scheme.entries:
        print(f"  ({format_partition(cls)})  weight {w}")
    cert = certify_scheme(result.scheme, provenance="lp_search")
    print("  " + cert.summary().replace("\n", "\n  "))

scheme = feasibility_search(6, 3, even_only=True).scheme
print("\ntrace moments of the explicit n=6 matrix agree with the spectrum:", matrix_moment_oracle(scheme))
