"""Exact maximum cocliques on small derangement graphs.

Sym(n) acting on k-subsets always has the subset stabilizer cosets as
maximum cocliques for the cases below. Alt(4) on 2-subsets is different: the
Klein four-group is a coclique twice as large as a stabilizer.
"""
from setwise_ekr.brute import ALT, SYM, build_graph, canonical_max_check, max_coclique, stabilizer_order

for group, n, k in [(SYM, 4, 1), (SYM, 5, 2), (SYM, 6, 3), (ALT, 4, 2), (ALT, 6, 3)]:
    graph = build_graph(group, n, k)
    witness = max_coclique(graph)
    stab = stabilizer_order(group, n, k)
    print(f"{group}({n}) on {k}-subsets: {graph.order} vertices, degree {graph.degree()}, "
          f"alpha {witness.size}, stabilizer {stab}, canonical witness: {witness.is_canonical}")

print("\nA maximum coclique of Alt(4) on 2-subsets (1-based images):")
for p in max_coclique(build_graph(ALT, 4, 2)).members:
    print("  ", [i + 1 for i in p])
print("every maximum coclique canonical for Alt(4), k=2:", canonical_max_check(ALT, 4, 2))
print("every maximum coclique canonical for Sym(5), k=1:", canonical_max_check(SYM, 5, 1))
