"""Weighted adjacency matrices in the conjugacy class scheme of Sym(n).

A weight scheme puts a normalised weight omega on each chosen class C, i.e. the
matrix is sum (omega / |C|) A_C. Its eigenvalue on the isotypic component of
chi^lam is (1 / f^lam) * sum omega * chi^lam(C).
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .characters import dimension, mn_character
from .partitions import (
    EVEN,
    Partition,
    conjugate,
    enumerate_partitions,
    is_k_derangement,
    make_partition,
    parity,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class WeightScheme:
    n: int
    k: int | None
    entries: tuple[tuple[Partition, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for cls, _ in self.entries:
            if sum(cls) != self.n:
                raise ValueError(f"class {cls} is not a cycle type of Sym({self.n})")
            if self.k is not None and not is_k_derangement(cls, self.k):
                raise ValueError(f"class {cls} fixes a {self.k}-subset")
            if cls in seen:
                raise ValueError(f"class {cls} listed twice")
            seen.add(cls)

    @classmethod
    def build(cls, n: int, k: int | None, pairs: Iterable[tuple[Sequence[int], object]]) -> "WeightScheme":
        entries = tuple((make_partition(c), Fraction(w)) for c, w in pairs)
        return cls(n, k, entries)

    @property
    def classes(self) -> list[Partition]:
        return [c for c, _ in self.entries]

    @property
    def weights(self) -> list[Fraction]:
        return [w for _, w in self.entries]

    def weight(self, cls: Partition) -> Fraction:
        return dict(self.entries).get(cls, Fraction(0))

    def nonzero(self) -> "WeightScheme":
        return WeightScheme(self.n, self.k, tuple(e for e in self.entries if e[1] != 0))

    def row_sum(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def all_even(self) -> bool:
        return all(parity(c) == EVEN for c in self.classes)

    def to_json(self) -> list[dict]:
        return [{"class": list(c), "omega": str(w)} for c, w in self.entries]


def eigenvalue(scheme: WeightScheme, lam: Partition) -> Fraction:
    lam = make_partition(lam)
    if sum(lam) != scheme.n:
        raise ValueError(f"{lam} is not a partition of {scheme.n}")
    total = sum(w * mn_character(lam, c) for c, w in scheme.entries if w)
    return Fraction(total, 1) / dimension(lam)


def _cache_path(cls: Partition) -> str | None:
    root = os.environ.get("EKR_CACHE_DIR")
    if not root:
        return None
    key = hashlib.sha256(f"schema{SCHEMA_VERSION}:{list(cls)}".encode()).hexdigest()
    return os.path.join(root, f"{key}.json")


def class_column(cls: Partition) -> list[int]:
    """chi^lam(cls) for every lam of n, in enumeration order.

    Persisted under ``$EKR_CACHE_DIR`` when that variable is set.
    """
    path = _cache_path(cls)
    if path and os.path.exists(path):
        with open(path) as fh:
            data = json.load(fh)
        if data.get("class") == list(cls):
            return data["values"]
    values = [mn_character(lam, cls) for lam in enumerate_partitions(sum(cls))]
    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w") as fh:
            json.dump({"schema": SCHEMA_VERSION, "class": list(cls), "values": values}, fh)
        os.replace(tmp, path)
    return values


@dataclass
class Spectrum:
    scheme: WeightScheme
    values: dict[Partition, Fraction] = field(default_factory=dict)

    @property
    def max_value(self) -> Fraction:
        return max(self.values.values())

    @property
    def min_value(self) -> Fraction:
        return min(self.values.values())

    @property
    def argmax(self) -> list[Partition]:
        top = self.max_value
        return [lam for lam, v in self.values.items() if v == top]

    @property
    def argmin(self) -> list[Partition]:
        bottom = self.min_value
        return [lam for lam, v in self.values.items() if v == bottom]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.scheme.n,
            "k": self.scheme.k,
            "weights": self.scheme.to_json(),
            "eigenvalues": [{"shape": list(lam), "value": str(v)} for lam, v in self.values.items()],
        }


def _column_chunk(classes: list[Partition]) -> list[list[int]]:
    return [class_column(c) for c in classes]


def full_spectrum(scheme: WeightScheme, workers: int = 1) -> Spectrum:
    """Eigenvalue for every lam of n. ``workers > 1`` spreads classes over processes."""
    live = [(c, w) for c, w in scheme.entries if w]
    classes = [c for c, _ in live]
    if workers > 1 and len(classes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            columns = [col for chunk in pool.map(_column_chunk, [[c] for c in classes]) for col in chunk]
    else:
        columns = _column_chunk(classes)
    shapes = enumerate_partitions(scheme.n)
    values = {}
    for idx, lam in enumerate(shapes):
        total = sum(w * col[idx] for (_, w), col in zip(live, columns))
        values[lam] = Fraction(total) / dimension(lam)
    return Spectrum(scheme, values)


def max_multiplicity(scheme: WeightScheme) -> int:
    """Multiplicity of the row-sum eigenvalue of the Cayley graph the scheme spans.

    The classes generate Alt(n) exactly when they are all even, and then the
    graph splits into two copies of a connected Cayley graph on Alt(n).
    """
    live = scheme.nonzero()
    if not live.entries:
        raise ValueError("scheme has no nonzero weights")
    return 2 if live.all_even() else 1


def ratio_bound(num_vertices, degree, tau) -> Fraction:
    """Weighted ratio bound |V| / (1 - d / tau)."""
    degree, tau = Fraction(degree), Fraction(tau)
    if not (tau < 0 < degree):
        raise ValueError("ratio bound needs tau < 0 < degree")
    return Fraction(num_vertices) / (1 - degree / tau)


def clique_coclique_bound(group_order, clique) -> Fraction:
    if clique == 0:
        raise ZeroDivisionError("clique size must be positive")
    if group_order <= 0 or clique < 0:
        raise ValueError("inputs must be positive")
    return Fraction(group_order) / Fraction(clique)


def transpose_pairing_check(scheme: WeightScheme, spectrum: Spectrum | None = None) -> bool:
    """True iff xi_lam == xi_lam' for every lam; only meaningful for all-even schemes."""
    if not scheme.nonzero().all_even():
        raise ValueError("transpose pairing needs every weighted class to be even")
    spectrum = spectrum or full_spectrum(scheme)
    return all(spectrum.values[conjugate(lam)] == v for lam, v in spectrum.values.items())


def trace_identity(spectrum: Spectrum, power: int = 1) -> Fraction:
    """sum_lam (f^lam)^2 xi_lam^power, which is trace(A^power)."""
    return sum(
        (dimension(lam) ** 2 * v**power for lam, v in spectrum.values.items()), Fraction(0)
    )
