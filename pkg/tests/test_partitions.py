from collections import Counter
from itertools import combinations, permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from setwise_ekr.partitions import (
    EVEN,
    ODD,
    class_info,
    class_size,
    conjugate,
    derangement_classes,
    enumerate_partitions,
    format_partition,
    has_subpartition_sum,
    is_k_derangement,
    make_partition,
    parity,
    parse_partition,
    partition_count,
    shape,
)


def pentagonal_counts(limit):
    """p(0..limit) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * limit
    for m in range(1, limit + 1):
        total, j = 0, 1
        while True:
            g1, g2 = j * (3 * j - 1) // 2, j * (3 * j + 1) // 2
            if g1 > m:
                break
            sgn = 1 if j % 2 else -1
            total += sgn * p[m - g1]
            if g2 <= m:
                total += sgn * p[m - g2]
            j += 1
        p[m] = total
    return p


def cycle_type_of(perm):
    seen, parts = set(), []
    for i in range(len(perm)):
        if i not in seen:
            length, j = 0, i
            while j not in seen:
                seen.add(j)
                j = perm[j]
                length += 1
            parts.append(length)
    return make_partition(parts)


def inversions(perm):
    return sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])


partitions_st = st.integers(0, 25).flatmap(lambda n: st.sampled_from(enumerate_partitions(n)))


def test_enumerate_small():
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(0) == [()]


def test_enumeration_count_matches_pentagonal_recurrence():
    p = pentagonal_counts(60)
    assert partition_count(30) == p[30] == 5604
    for n in range(0, 31):
        parts = enumerate_partitions(n)
        assert len(parts) == len(set(parts)) == p[n]
        assert all(sum(lam) == n and list(lam) == sorted(lam, reverse=True) for lam in parts)
    for n in range(31, 61):
        assert partition_count(n) == p[n]


def test_enumeration_order_is_reverse_lex():
    parts = enumerate_partitions(12)
    assert parts == sorted(parts, reverse=True)
    assert parts[0] == (12,) and parts[-1] == (1,) * 12


def test_make_partition_canonical():
    assert make_partition([1, 3, 0, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        make_partition([2, -1])


def test_parse_and_format_roundtrip():
    assert parse_partition("18,2,1^2") == (18, 2, 1, 1)
    assert parse_partition("1^3") == (1, 1, 1)
    assert format_partition((18, 2, 1, 1)) == "18,2,1^2"
    with pytest.raises(ValueError):
        parse_partition("2,x")


@given(partitions_st)
def test_conjugate_is_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


def test_conjugate_examples():
    assert conjugate((7,)) == (1,) * 7
    assert conjugate((3, 1)) == (2, 1, 1)
    assert conjugate(shape(20, 2, 2)) == (3, 3) + (1,) * 14


def test_class_size_examples():
    assert class_size((9,)) == factorial(8)
    assert class_size((1,) * 9) == 1
    assert class_size((2, 1, 1)) == 6


def test_class_sizes_match_explicit_permutations():
    for n in range(1, 8):
        counts = Counter(cycle_type_of(p) for p in permutations(range(n)))
        assert counts == {lam: class_size(lam) for lam in enumerate_partitions(n)}


def test_class_sizes_sum_to_factorial():
    for n in range(0, 31):
        assert sum(class_size(lam) for lam in enumerate_partitions(n)) == factorial(n)


def test_parity_examples():
    assert parity((3,)) == EVEN
    assert parity((2, 1)) == ODD
    for n in (20, 22, 24):
        assert parity(shape(n, 2)) == EVEN


def test_parity_matches_inversion_count():
    for n in range(1, 8):
        for p in permutations(range(n)):
            expected = EVEN if inversions(p) % 2 == 0 else ODD
            assert parity(cycle_type_of(p)) == expected


def test_class_info_invariants():
    for lam in enumerate_partitions(9):
        info = class_info(lam)
        assert factorial(9) % info.size == 0
        assert (info.parity == EVEN) == ((9 - len(lam)) % 2 == 0)


def test_subpartition_sum_examples():
    assert has_subpartition_sum((2, 2, 1, 1), 3)
    for n in range(3, 12):
        assert not any(has_subpartition_sum((n,), k) for k in range(1, n))
    for n in range(6, 15):
        assert not has_subpartition_sum(shape(n, 1), 4)


@given(partitions_st, st.integers(1, 6))
def test_subpartition_sum_matches_brute_force(lam, k):
    brute = any(sum(c) == k for r in range(len(lam) + 1) for c in combinations(lam, r))
    assert has_subpartition_sum(lam, k) == brute


def test_k_derangement_examples():
    for n in range(8, 20):
        assert is_k_derangement(shape(n, 3), 4)
        assert not is_k_derangement(shape(n, 3), 3)
    k5_even_tails = [(1,), (2,), (1, 1, 1), (4,), (2, 1, 1), (6,), (2, 2, 2), (3, 3, 1), (6, 1, 1), (6, 1, 1, 1, 1)]
    for n in (32, 34):
        assert all(is_k_derangement(shape(n, *t), 5) for t in k5_even_tails)


def test_k_derangement_complement_symmetry():
    for n in range(2, 21):
        for lam in enumerate_partitions(n):
            for k in range(1, min(5, n - 1) + 1):
                assert is_k_derangement(lam, k) == is_k_derangement(lam, n - k)


def test_derangement_classes_sym6_k3():
    assert set(derangement_classes(6, 3)) == {(6,), (5, 1), (4, 2), (4, 1, 1), (2, 2, 2)}
    assert set(derangement_classes(6, 3, even_only=True)) == {(5, 1), (4, 2)}
