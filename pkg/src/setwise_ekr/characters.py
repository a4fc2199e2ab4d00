"""Irreducible characters of Sym(n).

Character values come from the Murnaghan-Nakayama rule, stripping the largest
cycle of the class first. Rim hooks are found on the beta-set (first column
hook lengths) of the shape: removing a rim hook of length r moves one bead from
position b to the empty position b - r, with sign (-1)^(beads jumped over).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

from .partitions import (
    Partition,
    class_size,
    conjugate,
    enumerate_partitions,
    make_partition,
    shape,
)


def _beta(lam: Partition) -> list[int]:
    ell = len(lam)
    return [lam[i] + ell - 1 - i for i in range(ell)]


def _from_beta(beta: list[int]) -> Partition:
    beta = sorted(beta, reverse=True)
    ell = len(beta)
    return tuple(p for p in (beta[i] - (ell - 1 - i) for i in range(ell)) if p > 0)


def rim_hooks(lam: Partition, r: int) -> Iterator[tuple[int, Partition]]:
    """Yield ``(sign, lam minus hook)`` for every rim hook of length ``r`` in ``lam``."""
    beta = _beta(lam)
    occupied = set(beta)
    for i, b in enumerate(beta):
        t = b - r
        if t < 0 or t in occupied:
            continue
        leg = sum(1 for c in beta if t < c < b)
        rest = beta[:i] + beta[i + 1 :] + [t]
        yield (-1 if leg % 2 else 1), _from_beta(rest)


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    total = 0
    for s, smaller in rim_hooks(lam, r):
        total += s * _mn(smaller, rest)
    return total


def mn_character(lam: Partition, mu: Partition) -> int:
    """chi^lam evaluated on the class of cycle type ``mu``."""
    lam = make_partition(lam)
    mu = make_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError(f"{lam} and {mu} are partitions of different integers")
    return _mn(lam, mu)


def hook_lengths(lam: Partition) -> list[int]:
    lt = conjugate(lam)
    return [
        lam[i] - j + lt[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])
    ]


@lru_cache(maxsize=None)
def dimension(lam: Partition) -> int:
    """f^lam by the hook-length formula, with the final division checked exact."""
    lam = make_partition(lam)
    prod = 1
    for h in hook_lengths(lam):
        prod *= h
    f, rem = divmod(factorial(sum(lam)), prod)
    if rem:
        raise ArithmeticError(f"hook product does not divide n! for {lam}")
    return f


def low_dim_partitions(n: int, bound: int, lower: int = 0) -> list[Partition]:
    """Every lam of n with ``lower <= f^lam < bound``, by exhaustive enumeration."""
    return [lam for lam in enumerate_partitions(n) if lower <= dimension(lam) < bound]


def branch_restriction(lam: Partition) -> list[Partition]:
    """Shapes obtained by deleting one corner cell (restriction to Sym(n-1))."""
    out = []
    for i, p in enumerate(lam):
        if i + 1 == len(lam) or lam[i + 1] < p:
            child = list(lam)
            child[i] -= 1
            out.append(make_partition(child))
    return out


def branch_induction(lam: Partition) -> list[Partition]:
    """Shapes obtained by adding one cell (induction to Sym(n+1))."""
    out = []
    for i in range(len(lam) + 1):
        if i == 0 or lam[i - 1] > (lam[i] if i < len(lam) else 0):
            parent = list(lam) + [0]
            parent[i] += 1
            out.append(make_partition(parent))
    return out


def fixed_k_subsets(mu: Partition, k: int) -> int:
    """Number of k-subsets of [n] fixed by a permutation of cycle type ``mu``.

    A k-subset is fixed exactly when it is a union of cycles, so this counts
    subsets of the (distinguishable) cycles whose lengths sum to k.
    """
    if k < 0 or k > sum(mu):
        return 0
    ways = [1] + [0] * k
    for p in mu:
        for s in range(k, p - 1, -1):
            ways[s] += ways[s - p]
    return ways[k]


@dataclass
class PermCharDecomposition:
    n: int
    k: int
    multiplicities: dict[Partition, int] = field(default_factory=dict)

    def constituents(self) -> dict[Partition, int]:
        return {lam: m for lam, m in self.multiplicities.items() if m}


def perm_char_decompose(n: int, k: int) -> PermCharDecomposition:
    """Decompose the permutation character of Sym(n) on k-subsets into irreducibles."""
    classes = enumerate_partitions(n)
    weights = [class_size(mu) * fixed_k_subsets(mu, k) for mu in classes]
    order = factorial(n)
    mult = {}
    for lam in classes:
        m = Fraction(sum(w * mn_character(lam, mu) for w, mu in zip(weights, classes) if w), order)
        if m.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {m} for {lam}")
        mult[lam] = int(m)
    return PermCharDecomposition(n, k, mult)


# Dimension formulas for the low-dimensional shapes, keyed by the part of the
# shape below the first row. Each is an exact function of n.
DIMENSION_FORMULAS: dict[Partition, object] = {
    (): lambda n: Fraction(1),
    (1,): lambda n: Fraction(n - 1),
    (2,): lambda n: Fraction(n * (n - 3), 2),
    (1, 1): lambda n: Fraction((n - 1) * (n - 2), 2),
    (3,): lambda n: Fraction(n * (n - 1) * (n - 5), 6),
    (2, 1): lambda n: Fraction(n * (n - 2) * (n - 4), 3),
    (1, 1, 1): lambda n: Fraction((n - 1) * (n - 2) * (n - 3), 6),
    (4,): lambda n: Fraction(n * (n - 1) * (n - 2) * (n - 7), 24),
    (1, 1, 1, 1): lambda n: Fraction((n - 1) * (n - 2) * (n - 3) * (n - 4), 24),
    (3, 1): lambda n: Fraction(n * (n - 1) * (n - 3) * (n - 6), 8),
    (2, 2): lambda n: Fraction(n * (n - 1) * (n - 4) * (n - 5), 12),
    (2, 1, 1): lambda n: Fraction(n * (n - 2) * (n - 3) * (n - 5), 8),
    (5,): lambda n: Fraction(n * (n - 1) * (n - 2) * (n - 3) * (n - 9), 120),
    (1, 1, 1, 1, 1): lambda n: Fraction((n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5), 120),
    (4, 1): lambda n: Fraction(n * (n - 1) * (n - 2) * (n - 4) * (n - 8), 30),
    (3, 2): lambda n: Fraction(n * (n - 1) * (n - 2) * (n - 5) * (n - 7), 24),
    (3, 1, 1): lambda n: Fraction(n * (n - 1) * (n - 3) * (n - 4) * (n - 7), 20),
    (2, 2, 1): lambda n: Fraction(n * (n - 1) * (n - 3) * (n - 5) * (n - 6), 24),
    (2, 1, 1, 1): lambda n: Fraction(n * (n - 2) * (n - 3) * (n - 4) * (n - 6), 30),
    (6,): lambda n: Fraction(n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 11), 720),
    (1,) * 6: lambda n: Fraction(
        (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5) * (n - 6), 720
    ),
}


# Shape families of the three low-dimension classifications, as rows below the first.
LOW_DIM_FAMILIES: dict[str, list[Partition]] = {
    "S": [(), (1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1), (4,), (1, 1, 1, 1)],
    "T": [(3, 1), (2, 2), (2, 1, 1), (5,), (1, 1, 1, 1, 1)],
    "U": [(4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (6,), (1,) * 6],
}


def family(n: int, name: str, with_conjugates: bool = True) -> set[Partition]:
    """The set S_n, T_n or U_n (optionally closed under conjugation)."""
    shapes = {shape(n, *tail) for tail in LOW_DIM_FAMILIES[name]}
    if with_conjugates:
        shapes |= {conjugate(lam) for lam in shapes}
    return shapes


@dataclass(frozen=True)
class ExceptionRow:
    tail: Partition          # shape is [m - |tail|, *tail] with m = n + 1
    degree: object           # f as a function of n
    excess: object           # f - threshold(n + 1) as a function of n


def _f(num, den):
    return lambda n: Fraction(num(n), den)


# Shapes of n+1 whose restriction to Sym(n) avoids the low-dimension families,
# with their degree and their excess over the relevant threshold at n+1.
EXCEPTION_TABLES: dict[int, list[ExceptionRow]] = {
    4: [
        ExceptionRow((3, 1), _f(lambda n: (n + 1) * n * (n - 2) * (n - 5), 8),
                     _f(lambda n: (n - 7) * (n - 2) * n * (n + 1), 12)),
        ExceptionRow((2, 2), _f(lambda n: (n + 1) * n * (n - 3) * (n - 4), 12),
                     _f(lambda n: n * (n + 1) * (n * n - 11 * n + 22), 24)),
        ExceptionRow((2, 1, 1), _f(lambda n: (n + 1) * (n - 1) * (n - 2) * (n - 4), 8),
                     _f(lambda n: (n - 6) * (n - 2) * (n - 1) * (n + 1), 12)),
        ExceptionRow((5,), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 8), 120),
                     _f(lambda n: (n - 13) * (n - 2) * (n - 1) * n * (n + 1), 120)),
        ExceptionRow((4, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 3) * (n - 7), 30),
                     lambda n: Fraction((n - 1) * n * (n + 1), 30) * (n * n - Fraction(45, 4) * n + Fraction(47, 2))),
        ExceptionRow((2, 1, 1, 1), _f(lambda n: (n + 1) * (n - 1) * (n - 2) * (n - 3) * (n - 5), 30),
                     lambda n: Fraction((n - 2) * (n - 1) * (n + 1), 30) * (n * n - Fraction(37, 4) * n + 15)),
        ExceptionRow((1,) * 5, _f(lambda n: n * (n - 1) * (n - 2) * (n - 3) * (n - 4), 120),
                     _f(lambda n: (n - 2) * (n - 1) * n * (n * n - 12 * n + 7), 120)),
    ],
    5: [
        ExceptionRow((4, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 3) * (n - 7), 30),
                     lambda n: (n - Fraction(26, 3)) * Fraction((n - 3) * (n - 1) * n * (n + 1), 40)),
        ExceptionRow((2, 1, 1, 1), _f(lambda n: (n + 1) * (n - 1) * (n - 2) * (n - 3) * (n - 5), 30),
                     lambda n: (n - Fraction(20, 3)) * Fraction((n - 3) * (n - 2) * (n - 1) * (n + 1), 40)),
        ExceptionRow((3, 2), _f(lambda n: (n + 1) * n * (n - 1) * (n - 4) * (n - 6), 24),
                     lambda n: Fraction((n - 1) * n * (n + 1), 30) * (n * n - Fraction(45, 4) * n + Fraction(57, 2))),
        ExceptionRow((3, 1, 1), _f(lambda n: (n + 1) * n * (n - 2) * (n - 3) * (n - 6), 20),
                     _f(lambda n: (n - 7) * (n - 3) * (n - 2) * n * (n + 1), 24)),
        ExceptionRow((2, 2, 1), _f(lambda n: (n + 1) * n * (n - 2) * (n - 4) * (n - 5), 24),
                     lambda n: Fraction((n - 2) * n * (n + 1), 30) * (n * n - Fraction(41, 4) * n + Fraction(97, 4))),
        ExceptionRow((6,), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 3) * (n - 10), 720),
                     _f(lambda n: (n - 16) * (n - 3) * (n - 2) * (n - 1) * n * (n + 1), 720)),
        ExceptionRow((5, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 4) * (n - 9), 144),
                     lambda n: Fraction((n - 2) * (n - 1) * n * (n + 1), 144) * (n * n - Fraction(71, 5) * n + Fraction(198, 5))),
        ExceptionRow((2, 1, 1, 1, 1), _f(lambda n: (n + 1) * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 6), 144),
                     lambda n: Fraction((n - 3) * (n - 2) * (n - 1) * (n + 1), 144) * (n * n - Fraction(56, 5) * n + 24)),
        ExceptionRow((1,) * 6, _f(lambda n: n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5), 720),
                     _f(lambda n: (n - 14) * (n - 3) * (n - 2) * n * (n - 1) ** 2, 720)),
    ],
    6: [
        ExceptionRow((5, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 4) * (n - 9), 144),
                     _f(lambda n: (n - 13) * (n - 4) * (n - 2) * (n - 1) * n * (n + 1), 240)),
        ExceptionRow((2, 1, 1, 1, 1), _f(lambda n: (n + 1) * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 6), 144),
                     _f(lambda n: (n - 10) * (n - 4) * (n - 3) * (n - 2) * (n - 1) * (n + 1), 240)),
        ExceptionRow((4, 2), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 5) * (n - 8), 80),
                     lambda n: Fraction(7 * (n - 2) * (n - 1) * n * (n + 1), 720) * (n * n - Fraction(103, 7) * n + 48)),
        ExceptionRow((4, 1, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 3) * (n - 4) * (n - 8), 72),
                     lambda n: (n - Fraction(19, 2)) * Fraction((n - 4) * (n - 3) * (n - 1) * n * (n + 1), 90)),
        ExceptionRow((3, 3), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 6) * (n - 7), 144),
                     _f(lambda n: (n - 2) * (n - 1) * n * (n + 1) * (n * n - 17 * n + 62), 240)),
        ExceptionRow((3, 2, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 3) * (n - 5) * (n - 7), 45),
                     lambda n: 7 * (n - 8) * (n - Fraction(34, 7)) * Fraction((n - 3) * (n - 1) * n * (n + 1), 360)),
        ExceptionRow((3, 1, 1, 1), _f(lambda n: (n + 1) * n * (n - 2) * (n - 3) * (n - 4) * (n - 7), 72),
                     lambda n: (n - Fraction(17, 2)) * Fraction((n - 4) * (n - 3) * (n - 2) * n * (n + 1), 90)),
        ExceptionRow((2, 2, 2), _f(lambda n: (n + 1) * n * (n - 1) * (n - 4) * (n - 5) * (n - 6), 144),
                     _f(lambda n: (n - 4) * (n - 1) * n * (n + 1) * (n * n - 15 * n + 46), 240)),
        ExceptionRow((2, 2, 1, 1), _f(lambda n: (n + 1) * n * (n - 2) * (n - 3) * (n - 5) * (n - 6), 80),
                     lambda n: Fraction(7 * (n - 3) * (n - 2) * n * (n + 1), 720) * (n * n - Fraction(89, 7) * n + Fraction(262, 7))),
        ExceptionRow((7,), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 12), 5040),
                     _f(lambda n: (n - 26) * (n - 4) * (n - 3) * (n - 2) * (n - 1) * n * (n + 1), 5040)),
        ExceptionRow((6, 1), _f(lambda n: (n + 1) * n * (n - 1) * (n - 2) * (n - 3) * (n - 5) * (n - 11), 840),
                     lambda n: Fraction((n - 3) * (n - 2) * (n - 1) * n * (n + 1), 840) * (n * n - Fraction(55, 3) * n + Fraction(193, 3))),
        ExceptionRow((2, 1, 1, 1, 1, 1), _f(lambda n: (n + 1) * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5) * (n - 7), 840),
                     lambda n: Fraction((n - 4) * (n - 3) * (n - 2) * (n - 1) * (n + 1), 840) * (n * n - Fraction(43, 3) * n + 35)),
        ExceptionRow((1,) * 7, _f(lambda n: n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5) * (n - 6), 5040),
                     _f(lambda n: (n - 4) * (n - 3) * (n - 2) * (n - 1) * n * (n * n - 25 * n + 16), 5040)),
    ],
}

EXCEPTION_RANGES = {4: 15, 5: 19, 6: 27}


def exception_threshold(m: int, k_case: int) -> int:
    """C(m,4), C(m,5) or 2*C(m,6): the dimension cut each exception table is measured against."""
    if k_case == 6:
        return 2 * comb(m, 6)
    return comb(m, k_case)


@dataclass
class ExceptionCheck:
    shape: Partition
    dimension: int
    expected_degree: Fraction
    excess: int
    expected_excess: Fraction

    @property
    def ok(self) -> bool:
        return (
            self.dimension == self.expected_degree
            and self.excess == self.expected_excess
            and self.excess > 0
        )


def exception_table_check(n: int, k_case: int) -> list[ExceptionCheck]:
    """Evaluate each exception-table row at ``n``; rows describe shapes of ``n + 1``."""
    if k_case not in EXCEPTION_TABLES:
        raise ValueError("k_case must be 4, 5 or 6")
    if n < EXCEPTION_RANGES[k_case]:
        raise ValueError(f"table for k={k_case} needs n >= {EXCEPTION_RANGES[k_case]}")
    m = n + 1
    out = []
    for row in EXCEPTION_TABLES[k_case]:
        lam = shape(m, *row.tail)
        f = dimension(lam)
        excess = f - exception_threshold(m, k_case)
        out.append(ExceptionCheck(lam, f, row.degree(n), excess, row.excess(n)))
    return out
