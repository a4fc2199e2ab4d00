"""Brute-force oracle on explicit derangement graphs of Sym(n) and Alt(n).

Permutations are tuples in one-line form on {0, ..., n-1}; ``p[i]`` is the
image of i. Vertices of a graph are numbered in lexicographic order of their
one-line form, which makes every search deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from math import comb, factorial, lcm

import numpy as np

from .partitions import Partition, class_size, is_k_derangement, make_partition
from .schemes import WeightScheme, full_spectrum, trace_identity

SYM = "sym"
ALT = "alt"
DEFAULT_CAP = 5040
# Groups above this order (Sym(7)) need an explicit override.
OVERRIDE_ABOVE = 2520
ENUMERATION_CAP = 720

Perm = tuple[int, ...]


class CapExceeded(ValueError):
    pass


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            parts.append(length)
    return make_partition(parts)


def is_even(p: Perm) -> bool:
    return (len(p) - len(cycle_type(p))) % 2 == 0


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def group_elements(group: str, n: int) -> list[Perm]:
    if group not in (SYM, ALT):
        raise ValueError(f"unknown group {group!r}")
    elems = list(permutations(range(n)))
    if group == ALT:
        elems = [p for p in elems if is_even(p)]
    return elems


@dataclass
class DerangementGraph:
    group: str
    n: int
    k: int
    vertices: list[Perm]
    index: dict[Perm, int]
    connection: list[Perm]  # the derangements of the group
    adjacency: list[int]  # bitset of neighbours per vertex

    @property
    def order(self) -> int:
        return len(self.vertices)

    def adjacent(self, g: Perm, h: Perm) -> bool:
        return is_k_derangement(cycle_type(compose(inverse(g), h)), self.k)

    def degree(self, v: int = 0) -> int:
        return bin(self.adjacency[v]).count("1")


def build_graph(group: str, n: int, k: int, cap: int = DEFAULT_CAP, override: bool = False) -> DerangementGraph:
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    order = factorial(n) // (2 if group == ALT else 1)
    if order > cap:
        raise CapExceeded(f"|G| = {order} exceeds the cap {cap}")
    if order > OVERRIDE_ABOVE and not override:
        raise CapExceeded(f"|G| = {order} needs the override flag")
    verts = group_elements(group, n)
    index = {p: i for i, p in enumerate(verts)}
    conn = [p for p in verts if is_k_derangement(cycle_type(p), k)]
    adjacency = []
    for g in verts:
        bits = 0
        for s in conn:
            bits |= 1 << index[compose(g, s)]
        adjacency.append(bits)
    return DerangementGraph(group, n, k, verts, index, conn, adjacency)


# ---------------------------------------------------------------------------
# Maximum cliques in the complement graph (= maximum cocliques).

def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _colour_order(cand: int, adj: list[int]) -> list[tuple[int, int]]:
    """Greedy colouring of ``cand``; returns (vertex, colour) in non-decreasing colour."""
    out = []
    colour = 0
    rest = cand
    while rest:
        colour += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            rest &= ~(1 << v)
            out.append((v, colour))
    return out


class _CliqueSearch:
    def __init__(self, adj: list[int], collect: bool):
        self.adj = adj
        self.collect = collect
        self.best = 0
        self.found: list[int] = []

    def run(self, size: int, members: int, cand: int):
        if not cand:
            self._record(size, members)
            return
        order = _colour_order(cand, self.adj)
        for v, colour in reversed(order):
            bound = size + colour
            if bound < self.best or (bound == self.best and not self.collect):
                return
            self.run(size + 1, members | (1 << v), cand & self.adj[v])
            cand &= ~(1 << v)

    def _record(self, size: int, members: int):
        if size > self.best:
            self.best = size
            self.found = [members]
        elif size == self.best and self.collect:
            self.found.append(members)


def _complement(graph: DerangementGraph) -> list[int]:
    full = (1 << graph.order) - 1
    return [full & ~a & ~(1 << v) for v, a in enumerate(graph.adjacency)]


@dataclass
class CocliqueWitness:
    members: list[Perm]
    size: int
    is_canonical: bool

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "is_canonical": self.is_canonical,
            "members": [[i + 1 for i in p] for p in self.members],
        }


def stabilizer_order(group: str, n: int, k: int) -> int:
    order = factorial(n) // (2 if group == ALT else 1)
    return order // comb(n, k)


def is_canonical(members: list[Perm], group: str, n: int, k: int) -> bool:
    """Is ``members`` exactly {g : S^g = T} for some k-subsets S, T?"""
    if len(members) != stabilizer_order(group, n, k):
        return False
    f0 = members[0]
    for s in combinations(range(n), k):
        t = frozenset(f0[i] for i in s)
        if all(frozenset(f[i] for i in s) == t for f in members):
            return True
    return False


def _class_representatives(graph: DerangementGraph, cand: int) -> list[int]:
    """One vertex per conjugacy class among ``cand`` (first in vertex order)."""
    seen = set()
    reps = []
    for v in _bits(cand):
        ct = cycle_type(graph.vertices[v])
        if ct not in seen:
            seen.add(ct)
            reps.append(v)
    return reps


def max_coclique(graph: DerangementGraph, anchor: Perm | None = None) -> CocliqueWitness:
    """A maximum coclique containing the identity, found by branch and bound.

    Vertex transitivity lets us fix the identity; conjugation fixes the
    identity and preserves the graph, so the second member can be taken to
    be a chosen representative of its conjugacy class. With ``anchor`` the
    search is pinned to that vertex instead and no symmetry is broken, which
    gives an independent computation of the same number.
    """
    comp = _complement(graph)
    ident = tuple(range(graph.n))
    if anchor is None or tuple(anchor) == ident:
        start = graph.index[ident]
        cand = comp[start]
        search = _CliqueSearch(comp, collect=False)
        search.best = 1
        search.found = [1 << start]
        for rep in _class_representatives(graph, cand):
            search.run(2, (1 << start) | (1 << rep), cand & comp[rep])
    else:
        start = graph.index[tuple(anchor)]
        search = _CliqueSearch(comp, collect=False)
        search.run(1, 1 << start, comp[start])
    members = [graph.vertices[v] for v in _bits(search.found[0])]
    return CocliqueWitness(members, len(members), is_canonical(members, graph.group, graph.n, graph.k))


def all_max_cocliques_with_identity(graph: DerangementGraph) -> list[list[Perm]]:
    comp = _complement(graph)
    ident = graph.index[tuple(range(graph.n))]
    search = _CliqueSearch(comp, collect=True)
    search.run(1, 1 << ident, comp[ident])
    return [[graph.vertices[v] for v in _bits(m)] for m in search.found]


def intersection_density(group: str, n: int, k: int, **kw) -> Fraction:
    witness = max_coclique(build_graph(group, n, k, **kw))
    return Fraction(witness.size, stabilizer_order(group, n, k))


def canonical_max_check(group: str, n: int, k: int) -> bool:
    """Is every maximum coclique a coset of a k-subset stabilizer?

    Cocliques are translated so that they contain the identity; a translate of
    a canonical coclique is canonical, so this loses nothing.
    """
    graph = build_graph(group, n, k, cap=ENUMERATION_CAP)
    return all(is_canonical(c, group, n, k) for c in all_max_cocliques_with_identity(graph))


# ---------------------------------------------------------------------------

class MomentMismatch(ArithmeticError):
    pass


def matrix_moment_oracle(scheme: WeightScheme, powers=(1, 2, 3)) -> bool:
    """Compare trace(A^m) of the explicit n! x n! matrix with sum (f^lam)^2 xi^m.

    The matrix is scaled by the common denominator D of its entries so all
    arithmetic is on integers; entries of D*A are bounded before the int64
    products and the final sums use Python integers.
    """
    n = scheme.n
    if n > 6:
        raise CapExceeded("the explicit matrix is limited to n <= 6")
    verts = list(permutations(range(n)))
    entry = {c: w / class_size(c) for c, w in scheme.entries if w}
    denom = reduce(lcm, (v.denominator for v in entry.values()), 1)
    scaled = {c: int(v * denom) for c, v in entry.items()}
    size = len(verts)
    mat = np.zeros((size, size), dtype=np.int64)
    types = {p: cycle_type(p) for p in verts}
    for i, g in enumerate(verts):
        for h_idx, h in enumerate(verts):
            quotient = compose(inverse(g), h)
            val = scaled.get(types[quotient])
            if val:
                mat[i, h_idx] = val
    bound = int(np.abs(mat).max()) if size else 0
    if size * bound * bound >= 2**62:
        raise OverflowError("matrix entries too large for int64 products")
    square = mat @ mat
    traces = {
        1: int(np.trace(mat)),
        2: int(np.trace(square)),
        3: sum(int(x) for x in (square.astype(object) * mat.T.astype(object)).sum(axis=1)),
    }
    spectrum = full_spectrum(scheme)
    for m in powers:
        expected = trace_identity(spectrum, m) * denom**m
        if Fraction(traces[m]) != expected:
            raise MomentMismatch(f"trace(A^{m}) = {Fraction(traces[m], denom**m)}, "
                                 f"characters give {expected / denom**m}")
    return True
