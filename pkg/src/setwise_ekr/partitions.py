"""Integer partitions, read either as Young diagram shapes or as cycle types.

A partition is a plain tuple of positive integers in weakly decreasing order.
The empty tuple is the unique partition of 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence

Partition = tuple[int, ...]

EVEN = "even"
ODD = "odd"


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate and canonicalise ``parts``: sorts, drops zeros, rejects negatives."""
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted((p for p in parts if p > 0), reverse=True))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


_TOKEN = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"18,2,1^2"`` or ``"[18, 2, 1, 1]"`` into a partition.

    Exponent shorthand ``a^m`` expands to ``m`` copies of ``a``.
    """
    body = text.strip().strip("[]()")
    if not body:
        return ()
    parts: list[int] = []
    for token in body.split(","):
        m = _TOKEN.match(token)
        if m is None:
            raise ValueError(f"cannot parse partition token {token!r}")
        part, mult = int(m.group(1)), int(m.group(2) or 1)
        parts.extend([part] * mult)
    return make_partition(parts)


def format_partition(lam: Partition) -> str:
    """Compact exponent notation, e.g. ``(5, 1, 1, 1)`` -> ``"5,1^3"``."""
    out = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        out.append(str(lam[i]) if j - i == 1 else f"{lam[i]}^{j - i}")
        i = j
    return ",".join(out)


def _partitions_bounded(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order: ``(n)`` first, ``(1^n)`` last."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_partitions_bounded(n, n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            break
        sign = 1 if j % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        j += 1
    return total


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def multiplicities(lam: Partition) -> dict[int, int]:
    counts: dict[int, int] = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    return counts


def centralizer_order(lam: Partition) -> int:
    """Order of the centraliser of a permutation of cycle type ``lam``: prod i^m_i m_i!."""
    z = 1
    for part, m in multiplicities(lam).items():
        z *= part**m * factorial(m)
    return z


def class_size(lam: Partition) -> int:
    """Number of permutations of cycle type ``lam`` in Sym(n)."""
    n = sum(lam)
    size, rem = divmod(factorial(n), centralizer_order(lam))
    assert rem == 0
    return size


def parity(lam: Partition) -> str:
    """``"even"`` or ``"odd"``: the sign of a permutation with this cycle type."""
    return EVEN if (sum(lam) - len(lam)) % 2 == 0 else ODD


def sign(lam: Partition) -> int:
    return 1 if parity(lam) == EVEN else -1


@dataclass(frozen=True)
class ClassInfo:
    cycle_type: Partition
    size: int
    parity: str


def class_info(lam: Partition) -> ClassInfo:
    return ClassInfo(lam, class_size(lam), parity(lam))


def has_subpartition_sum(lam: Partition, k: int) -> bool:
    """True iff some sub-multiset of the parts of ``lam`` sums to ``k``."""
    if k < 0:
        return False
    reachable = 1  # bit s set <=> sum s is attainable
    mask = (1 << (k + 1)) - 1
    for p in lam:
        if p <= k:
            reachable |= (reachable << p) & mask
        if reachable >> k & 1:
            return True
    return bool(reachable >> k & 1)


def is_k_derangement(lam: Partition, k: int) -> bool:
    """A permutation of this cycle type fixes no k-subset of [n]."""
    return not has_subpartition_sum(lam, k)


def derangement_classes(n: int, k: int, even_only: bool = False) -> list[Partition]:
    """Cycle types of the k-derangements of Sym(n), in enumeration order."""
    out = [lam for lam in enumerate_partitions(n) if is_k_derangement(lam, k)]
    if even_only:
        out = [lam for lam in out if parity(lam) == EVEN]
    return out


def shape(n: int, *rest: int) -> Partition:
    """``[n - sum(rest), *rest]``, so ``shape(n, 2, 2)`` is ``[n-4,2,2]``."""
    return make_partition((n - sum(rest),) + rest)
