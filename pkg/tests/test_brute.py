import random
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

import pytest

from setwise_ekr import brute
from setwise_ekr.brute import (
    ALT,
    SYM,
    CapExceeded,
    MomentMismatch,
    all_max_cocliques_with_identity,
    build_graph,
    canonical_max_check,
    compose,
    cycle_type,
    group_elements,
    intersection_density,
    inverse,
    is_canonical,
    is_even,
    matrix_moment_oracle,
    max_coclique,
    stabilizer_order,
)
from setwise_ekr.partitions import derangement_classes, parity, EVEN
from setwise_ekr.schemes import WeightScheme
from setwise_ekr.weights import feasibility_search


def _moves_a_k_subset_nowhere_fixed(p, k):
    """Direct oracle: p fixes no k-subset setwise."""
    return all({p[i] for i in s} != set(s) for s in combinations(range(len(p)), k))


def _pairwise_non_adjacent(graph, members):
    return all(not graph.adjacent(a, b) for a, b in combinations(members, 2))


def test_permutation_helpers():
    p = (1, 2, 0, 4, 3)
    assert cycle_type(p) == (3, 2)
    assert not is_even(p)
    assert compose(p, inverse(p)) == tuple(range(5))
    q = (0, 2, 1, 3, 4)
    # compose applies the first argument first
    assert compose(p, q) == tuple(q[p[i]] for i in range(5))
    assert len(group_elements(ALT, 5)) == 60
    with pytest.raises(ValueError):
        group_elements("cyclic", 4)


@pytest.mark.parametrize("group,n,k", [(SYM, 4, 1), (SYM, 5, 2), (ALT, 4, 2), (SYM, 6, 3), (ALT, 6, 2)])
def test_connection_set_matches_direct_oracle(group, n, k):
    graph = build_graph(group, n, k)
    expected = [p for p in group_elements(group, n) if _moves_a_k_subset_nowhere_fixed(p, k)]
    assert sorted(graph.connection) == sorted(expected)
    assert all(graph.degree(v) == len(expected) for v in range(0, graph.order, 7))


def test_graph_examples():
    assert build_graph(SYM, 4, 1).degree() == 9
    alt42 = build_graph(ALT, 4, 2)
    assert len(alt42.connection) == 8 and {cycle_type(p) for p in alt42.connection} == {(3, 1)}
    sym63 = build_graph(SYM, 6, 3)
    assert {cycle_type(p) for p in sym63.connection} == set(derangement_classes(6, 3))


def test_adjacency_bitsets_agree_with_adjacent():
    graph = build_graph(SYM, 5, 2)
    rng = random.Random(7)
    for _ in range(300):
        i, j = rng.randrange(graph.order), rng.randrange(graph.order)
        bit = bool(graph.adjacency[i] >> j & 1)
        assert bit == graph.adjacent(graph.vertices[i], graph.vertices[j])


def test_caps():
    with pytest.raises(CapExceeded):
        build_graph(SYM, 7, 3)
    with pytest.raises(CapExceeded):
        build_graph(SYM, 8, 3, override=True)
    with pytest.raises(CapExceeded):
        build_graph(SYM, 5, 2, cap=100)
    with pytest.raises(ValueError):
        build_graph(SYM, 5, 5)
    assert build_graph(ALT, 7, 3, override=True).order == 2520


# ---------------------------------------------------------------------------

@pytest.mark.parametrize("group,n,k,alpha", [
    (SYM, 4, 1, 6), (SYM, 5, 1, 24), (SYM, 5, 2, 12), (SYM, 6, 3, 36), (ALT, 4, 2, 4), (ALT, 6, 3, 18),
])
def test_max_coclique_values(group, n, k, alpha):
    graph = build_graph(group, n, k)
    w = max_coclique(graph)
    assert w.size == alpha == len(w.members)
    assert tuple(range(n)) in w.members
    assert _pairwise_non_adjacent(graph, w.members)
    if w.is_canonical:
        assert w.size == stabilizer_order(group, n, k)


def test_witness_json_is_one_based():
    w = max_coclique(build_graph(ALT, 4, 2))
    data = w.to_json()
    assert data["size"] == 4 and data["is_canonical"] is False
    assert [1, 2, 3, 4] in data["members"]
    assert all(sorted(m) == [1, 2, 3, 4] for m in data["members"])


def test_alt4_max_coclique_is_klein_group():
    w = max_coclique(build_graph(ALT, 4, 2))
    assert {cycle_type(p) for p in w.members} == {(1, 1, 1, 1), (2, 2)}


def test_intersection_density_examples():
    assert intersection_density(ALT, 4, 2) == 2
    assert intersection_density(SYM, 5, 2) == 1
    assert intersection_density(SYM, 4, 1) == 1
    assert intersection_density(SYM, 5, 1) == 1
    assert isinstance(intersection_density(ALT, 5, 2), Fraction)


def test_canonical_max_check_examples():
    assert canonical_max_check(SYM, 4, 1)
    assert not canonical_max_check(ALT, 4, 2)
    assert canonical_max_check(SYM, 5, 1)


def test_enumeration_respects_its_cap():
    with pytest.raises(CapExceeded):
        canonical_max_check(SYM, 7, 2)


def test_enumerated_cocliques_are_maximum_and_independent():
    graph = build_graph(SYM, 4, 1)
    found = all_max_cocliques_with_identity(graph)
    # the stabilizers of the four points, all through the identity
    assert len(found) == 4
    for c in found:
        assert len(c) == 6 and _pairwise_non_adjacent(graph, c)


def test_sym_is_twice_alt_when_all_classes_even():
    # For n = 3, k = 1 the only derangement class is the 3-cycle, which is even.
    assert all(parity(c) == EVEN for c in derangement_classes(3, 1))
    sym = max_coclique(build_graph(SYM, 3, 1)).size
    alt = max_coclique(build_graph(ALT, 3, 1)).size
    assert sym == 2 * alt == 2


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 8) for k in range(1, 4) if k < n])
def test_canonical_cocliques_are_cocliques(n, k):
    rng = random.Random(n * 10 + k)
    elems = list(permutations(range(n)))
    subsets = list(combinations(range(n), k))
    for _ in range(2):
        s, t = set(rng.choice(subsets)), set(rng.choice(subsets))
        coset = [p for p in elems if {p[i] for i in s} == t]
        assert len(coset) == factorial(k) * factorial(n - k)
        assert is_canonical(coset, SYM, n, k)
        # any two members differ by a permutation fixing s setwise
        a = coset[0]
        for b in coset[1:]:
            quotient = compose(inverse(a), b)
            assert not _moves_a_k_subset_nowhere_fixed(quotient, k)


@pytest.mark.parametrize("group,n,k", [(SYM, 5, 2), (SYM, 6, 3), (ALT, 6, 3), (ALT, 5, 2)])
def test_translation_invariance(group, n, k):
    graph = build_graph(group, n, k)
    base = max_coclique(graph)
    rng = random.Random(n + k)
    for _ in range(3):
        g = rng.choice(graph.vertices)
        assert max_coclique(graph, anchor=g).size == base.size
        moved = [compose(m, g) for m in base.members]
        assert g in moved and _pairwise_non_adjacent(graph, moved)


def test_is_canonical_rejects_wrong_size():
    assert not is_canonical([tuple(range(4))], SYM, 4, 1)


# ---------------------------------------------------------------------------

def test_moment_oracle_single_class():
    assert matrix_moment_oracle(WeightScheme.build(5, 2, [((5,), 1)]))


def test_moment_oracle_on_search_scheme():
    result = feasibility_search(6, 3, even_only=True)
    assert result.status == "feasible"
    assert matrix_moment_oracle(result.scheme)
    assert matrix_moment_oracle(feasibility_search(6, 3, even_only=False).scheme)


def test_moment_oracle_fractional_weights():
    s = WeightScheme.build(5, 2, [((5,), Fraction(2, 3)), ((4, 1), Fraction(-1, 4))])
    assert matrix_moment_oracle(s)


def test_moment_oracle_zero_scheme():
    assert matrix_moment_oracle(WeightScheme.build(4, 1, [((4,), 0)]))


def test_moment_oracle_detects_mismatch(monkeypatch):
    real = brute.trace_identity
    monkeypatch.setattr(brute, "trace_identity", lambda spec, m=1: real(spec, m) + 1)
    with pytest.raises(MomentMismatch):
        matrix_moment_oracle(WeightScheme.build(4, 1, [((4,), 1)]))


def test_moment_oracle_refuses_large_n():
    with pytest.raises(CapExceeded):
        matrix_moment_oracle(WeightScheme.build(7, 3, [((7,), 1)]))


def test_stabilizer_order():
    assert stabilizer_order(SYM, 6, 3) == 36 == factorial(6) // comb(6, 3)
    assert stabilizer_order(ALT, 6, 3) == 18
