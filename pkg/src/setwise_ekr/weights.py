"""Closed-form weightings for k = 3, 4, 5 and the linear systems behind them.

Each closed form is stored twice: as a combination of the named symbols in
``SymbolTable`` and as a polynomial in n. The two are compared by tests.
Classes are addressed by their "tail" below the first cycle, so ``(6, 1, 1)``
stands for the cycle type ``(n-8, 6, 1, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Sequence

from .characters import dimension, mn_character
from .lp import _integer_row
from .partitions import EVEN, ODD, Partition, shape
from .schemes import WeightScheme

F = Fraction


@dataclass(frozen=True)
class SymbolTable:
    """Named binomial expressions used throughout the closed forms."""

    n: int
    k: int

    @property
    def alpha(self) -> int:
        return comb(self.n, self.k) - 1

    @property
    def beta(self) -> int:
        return self.n - 1

    @property
    def gamma(self) -> int:
        return comb(self.n, 2) - self.n

    @property
    def delta(self) -> int:
        return comb(self.n, 3) - comb(self.n, 2)

    @property
    def epsilon(self) -> int:
        return comb(self.n, 4) - comb(self.n, 3)

    @property
    def iota(self) -> int:
        return comb(self.n, 5) - comb(self.n, 4)

    @property
    def eta(self) -> int:
        return comb(self.n - 1, 2)

    @property
    def zeta(self) -> Fraction:
        n = self.n
        return F(n * (n - 2) * (n - 4), 3)

    @property
    def theta(self) -> Fraction:
        n = self.n
        return F(n * (n - 1) * (n - 4) * (n - 5), 12)

    @property
    def nu(self) -> Fraction:
        n = self.n
        return F(n * (n - 1) * (n - 3) * (n - 6), 8)

    @property
    def tau(self) -> int:
        return comb(self.n - 1, 4)

    @property
    def kappa(self) -> Fraction:
        n = self.n
        return F(n * (n - 2) * (n - 3) * (n - 5), 8)

    @property
    def mu(self) -> int:
        return comb(self.n - 1, 3)


def _poly(*coeffs) -> Callable[[int], Fraction]:
    """Polynomial in n from coefficients, highest degree first."""
    cs = [F(c) for c in coeffs]

    def evaluate(n: int) -> Fraction:
        acc = F(0)
        for c in cs:
            acc = acc * n + c
        return acc

    return evaluate


@dataclass(frozen=True)
class ClosedForm:
    """A closed-form weighting: tails, symbolic weights and polynomial weights."""

    name: str
    k: int
    parity: str  # parity of n
    n_min: int
    tails: tuple[Partition, ...]
    symbolic: Callable[[SymbolTable], tuple[Fraction, ...]]
    polynomial: tuple[Callable[[int], Fraction], ...]

    def classes(self, n: int) -> list[Partition]:
        return [shape(n, *t) for t in self.tails]

    def applies(self, n: int) -> bool:
        return n >= self.n_min and (n % 2 == 0) == (self.parity == EVEN)

    def symbolic_weights(self, n: int) -> tuple[Fraction, ...]:
        return tuple(F(w) for w in self.symbolic(SymbolTable(n, self.k)))

    def polynomial_weights(self, n: int) -> tuple[Fraction, ...]:
        return tuple(p(n) for p in self.polynomial)

    def scheme(self, n: int) -> WeightScheme:
        return WeightScheme.build(n, self.k, zip(self.classes(n), self.symbolic_weights(n)))


def _k3_odd(s: SymbolTable):
    return (s.beta + s.delta, s.delta, s.gamma - s.delta)


def _k3_even(s: SymbolTable):
    a, b, g = s.alpha, s.beta, s.gamma
    return (F(a + 2 * b + g, 3), F(a - b, 6) - F(g, 3), F(a - b, 2))


def _k4_even(s: SymbolTable):
    a, b, g, d, z = s.alpha, s.beta, s.gamma, s.delta, s.zeta
    return (
        a - b - g - d - z,
        F(b + d, 2),
        (a - d + z) / 3,
        (2 * a - 3 * b - 3 * g - 2 * d - z) / 3,
        (-2 * a + 3 * b + 4 * g + 3 * d + 2 * z) / 2,
    )


def _k4_odd(s: SymbolTable):
    a, b, g, d, z, e = s.alpha, s.beta, s.gamma, s.delta, s.zeta, s.eta
    return (
        (a + 5 * b + 4 * d + z) / 6,
        b + g + d + z + e,
        F(a - g + e, 2),
        (a - b - 2 * d + z) / 6,
        -b - d - z - e,
        (a - 4 * b - 3 * g - 2 * d - 2 * z - 3 * e) / 6,
    )


def _k5_even(s: SymbolTable):
    a, b, g, d, eps = s.alpha, s.beta, s.gamma, s.delta, s.epsilon
    e, z, th, ka, m = s.eta, s.zeta, s.theta, s.kappa, s.mu
    return (
        F(a, 6) - b - F(d, 6) - eps + z / 6 + th + ka + F(5 * m, 6),
        F(a, 8) + F(3 * b, 8) + F(g, 8) + F(3 * d, 8) + F(eps, 4) + F(e, 8) + th / 4 - ka / 4 - F(3 * m, 8),
        -b - eps + z + th + ka + m,
        F(a, 4) - F(3 * b, 4) - F(g, 4) - F(d, 4) - eps - F(e, 4) + th / 2 + F(m, 4),
        F(a, 4) - F(b, 4) - F(g, 4) - F(d, 4) + F(e, 4) + F(m, 4),
        -F(a, 24) + F(25 * b, 24) + F(g, 8) + F(d, 24) + F(13 * eps, 12) - F(e, 24) - 11 * th / 12 - ka / 12 - F(m, 24),
        F(a, 24) - F(b, 24) - F(g, 8) - F(d, 24) - F(eps, 12) + F(e, 24) - th / 12 + ka / 12 + F(m, 24),
        F(a, 6) - F(d, 6) + z / 6 - F(m, 6),
        F(3 * b, 2) + F(g, 2) + F(d, 2) + F(3 * eps, 2) - z - 3 * th / 2 - 3 * ka / 2 - F(3 * m, 2),
        F(a, 24) + F(b, 8) - F(g, 8) - F(d, 24) + F(eps, 4) - F(e, 8) - z / 3 - th / 4 - ka / 4 - F(7 * m, 24),
    )


def _k5_odd(s: SymbolTable):
    # In this family the symbol written eta stands for nu, the degree of [n-4,3,1].
    a, b, g, d, eps = s.alpha, s.beta, s.gamma, s.delta, s.epsilon
    e, z, th, ka = s.nu, s.zeta, s.theta, s.kappa
    return (
        a / 8 + F(7 * b, 8) + F(3 * eps, 4) + F(e, 8) - 7 * th / 8 - ka / 8,
        F(a, 2) - F(b, 2) - g - d - z - F(e, 2) - 3 * th / 2 - ka / 2,
        F(a, 4) - F(b, 4) - F(e, 4) + 3 * th / 4 - ka / 4,
        F(a, 8) - F(b, 8) - F(g, 4) - F(eps, 4) - F(e, 8) + th / 8 + ka / 8,
        F(a, 8) - F(b, 8) - F(5 * g, 12) - F(d, 3) + F(eps, 12) - z / 3 + F(e, 24) - 13 * th / 24 - ka / 24,
        F(a, 2) - F(b, 2) - F(g, 3) - F(2 * d, 3) - F(eps, 3) + z / 3 - F(e, 6) + th / 6 + ka / 6,
        -F(a, 2) + F(b, 2) + g + d + F(e, 2) + th / 2 + ka / 2,
        F(a, 8) - F(b, 8) - F(eps, 4) + F(e, 8) + th / 8 - ka / 8,
        -F(a, 4) + F(b, 4) + g + d + z + F(e, 4) + 5 * th / 4 + ka / 4,
    )


_K5E_SMALL = _poly(F(1, 960), F(-1, 96), F(7, 192), F(-5, 96), F(1, 40), 0)
_K5E_MID = _poly(F(1, 480), F(-1, 48), F(7, 96), F(-5, 48), F(1, 20), 0)

CLOSED_FORMS: dict[tuple[int, str], ClosedForm] = {
    (3, ODD): ClosedForm(
        "k3-odd", 3, ODD, 27,
        ((), (1, 1), (4, 1)),
        _k3_odd,
        (
            _poly(F(1, 6), -1, F(11, 6), -1),
            _poly(F(1, 6), -1, F(5, 6), 0),
            _poly(F(-1, 6), F(3, 2), F(-7, 3), 0),
        ),
    ),
    (3, EVEN): ClosedForm(
        "k3-even", 3, EVEN, 20,
        ((5,), (2, 2, 2), (4, 1, 1)),
        _k3_even,
        (
            _poly(F(1, 18), 0, F(5, 18), -1),
            _poly(F(1, 36), F(-1, 4), F(7, 18), 0),
            _poly(F(1, 12), F(-1, 4), F(-1, 3), 0),
        ),
    ),
    (4, EVEN): ClosedForm(
        "k4-even", 4, EVEN, 22,
        ((1,), (2,), (3,), (1, 1, 1), (5, 1, 1)),
        _k4_even,
        (
            _poly(F(1, 24), F(-3, 4), F(71, 24), F(-13, 4), 0),
            _poly(0, F(1, 12), F(-1, 2), F(11, 12), F(-1, 2)),
            _poly(F(1, 72), F(-1, 36), F(-13, 72), F(19, 36), F(-1, 3)),
            _poly(F(1, 36), F(-7, 18), F(41, 36), F(-10, 9), F(1, 3)),
            _poly(F(-1, 24), F(5, 6), F(-71, 24), F(8, 3), F(-1, 2)),
        ),
    ),
    (4, ODD): ClosedForm(
        "k4-odd", 4, ODD, 23,
        ((), (1, 1), (2, 1), (3, 3), (6, 1), (6, 1, 1, 1)),
        _k4_odd,
        (
            _poly(F(1, 144), F(1, 8), F(-133, 144), F(43, 24), -1),
            _poly(0, F(1, 2), -2, F(3, 2), 0),
            _poly(F(1, 48), F(-1, 8), F(11, 48), F(-1, 8), 0),
            _poly(F(1, 144), F(-1, 24), F(11, 144), F(-1, 24), 0),
            _poly(0, F(-1, 2), F(5, 2), -3, 0),
            _poly(F(1, 144), F(-5, 24), F(83, 144), F(-3, 8), 0),
        ),
    ),
    (5, EVEN): ClosedForm(
        "k5-even", 5, EVEN, 32,
        ((1,), (2,), (1, 1, 1), (4,), (2, 1, 1), (6,), (2, 2, 2), (3, 3, 1), (6, 1, 1), (6, 1, 1, 1, 1)),
        _k5_even,
        (
            _poly(F(1, 720), F(11, 72), F(-209, 144), F(307, 72), F(-119, 30), 0),
            _K5E_SMALL,
            _poly(0, F(1, 6), F(-7, 6), F(7, 3), F(-4, 3), 0),
            _K5E_MID,
            _K5E_MID,
            _poly(F(-1, 2880), F(-11, 288), F(233, 576), F(-415, 288), F(83, 40), -1),
            _poly(F(1, 2880), F(-1, 288), F(7, 576), F(-5, 288), F(1, 120), 0),
            _poly(F(1, 720), F(-1, 72), F(7, 144), F(-5, 72), F(1, 30), 0),
            _poly(0, F(-1, 4), 2, F(-19, 4), 3, 0),
            _poly(F(1, 2880), F(-13, 288), F(151, 576), F(-137, 288), F(31, 120), 0),
        ),
    ),
    (5, ODD): ClosedForm(
        "k5-odd", 5, ODD, 31,
        ((), (1, 1), (2, 1), (2, 2), (1, 1, 1, 1), (3, 1), (6, 1), (4, 4), (6, 1, 1, 1)),
        _k5_odd,
        (
            _poly(F(1, 960), F(-5, 96), F(29, 64), F(-145, 96), F(253, 120), -1),
            _poly(F(1, 240), F(-7, 24), F(103, 48), F(-119, 24), F(31, 10), 0),
            _K5E_MID,
            _K5E_SMALL,
            _poly(F(1, 960), F(-5, 96), F(55, 192), F(-49, 96), F(11, 40), 0),
            _poly(F(1, 240), F(-1, 24), F(7, 48), F(-5, 24), F(1, 10), 0),
            _poly(F(-1, 240), F(5, 24), F(-79, 48), F(109, 24), F(-41, 10), 0),
            _K5E_SMALL,
            _poly(F(-1, 480), F(3, 16), F(-119, 96), F(39, 16), F(-83, 60), 0),
        ),
    ),
}


def closed_form(k: int, n: int) -> ClosedForm | None:
    """The closed form covering (n, k), or None when n is below its range."""
    cf = CLOSED_FORMS.get((k, EVEN if n % 2 == 0 else ODD))
    return cf if cf is not None and cf.applies(n) else None


def k3_odd_family(n: int, s, t) -> WeightScheme:
    """Two-parameter k = 3 family for odd n on (n), (n-2,1^2), (n-2,2), (n-5,4,1), (n-1,1).

    ``s = gamma - delta, t = 0`` recovers the closed form.
    """
    sym = SymbolTable(n, 3)
    s, t = F(s), F(t)
    a, b, g = sym.alpha, sym.beta, sym.gamma
    weights = (
        -s - t + b + g,
        -(s + t) / 2 + F(a - b, 2),
        (s + t) / 2 + F(a - b, 2) - g,
        s,
        t,
    )
    tails = ((), (1, 1), (2,), (4, 1), (1,))
    return WeightScheme.build(n, 3, zip((shape(n, *tl) for tl in tails), weights))


def k3_even_family(n: int, s, t) -> WeightScheme:
    """Two-parameter k = 3 family for even n on (n-5,5), (n-6,2^3), (n-6,4,1^2), (n-6,4,2), (n-6,5,1).

    ``s = t = 0`` recovers the closed form.
    """
    sym = SymbolTable(n, 3)
    s, t = F(s), F(t)
    a, b, g = sym.alpha, sym.beta, sym.gamma
    weights = (
        -2 * t / 3 - 2 * s / 3 + F(a + 2 * b + g, 3),
        t / 6 - s / 3 + F(a - b, 6) - F(g, 3),
        -t / 2 + F(a - b, 2),
        s,
        t,
    )
    tails = ((5,), (2, 2, 2), (4, 1, 1), (4, 2), (5, 1))
    return WeightScheme.build(n, 3, zip((shape(n, *tl) for tl in tails), weights))


def polytope_check_k3(n: int, t, s) -> bool:
    """Is (t, s) inside the polytope of admissible k = 3 parameters?

    The half-spaces are written in (x, y) with x = t and y = s for both
    parities of n.
    """
    sym = SymbolTable(n, 3)
    x, y = F(t), F(s)
    b, g = sym.beta, sym.gamma
    if n % 2:
        lo = b + g - comb(n - 1, 3)
        return (
            3 * x + y < b + g
            and -sym.zeta < y - x <= lo
            and lo <= x + y < b + g
        )
    reach = comb(n - 1, 2)
    return (
        2 * x + 2 * y <= comb(n, 3)
        and x - y >= 0
        and b + g - reach <= x <= b + g + reach
        and y >= 0
    )


def scheme_for(k: int, n: int, check_range: bool = True) -> WeightScheme:
    """The closed-form scheme for (n, k); zero weights are dropped."""
    cf = CLOSED_FORMS.get((k, EVEN if n % 2 == 0 else ODD))
    if cf is None:
        raise ValueError(f"no closed form for k={k}")
    if check_range and not cf.applies(n):
        raise ValueError(f"{cf.name} closed form needs n >= {cf.n_min}, got n={n}")
    return cf.scheme(n).nonzero()


def scheme_k3_odd(n: int) -> WeightScheme:
    return scheme_for(3, _odd(n))


def scheme_k3_even(n: int) -> WeightScheme:
    return scheme_for(3, _even(n))


def scheme_k4_even(n: int) -> WeightScheme:
    return scheme_for(4, _even(n))


def scheme_k4_odd(n: int) -> WeightScheme:
    return scheme_for(4, _odd(n))


def scheme_k5_even(n: int) -> WeightScheme:
    return scheme_for(5, _even(n))


def scheme_k5_odd(n: int) -> WeightScheme:
    return scheme_for(5, _odd(n))


def _odd(n: int) -> int:
    if n % 2 == 0:
        raise ValueError(f"n={n} is not odd")
    return n


def _even(n: int) -> int:
    if n % 2:
        raise ValueError(f"n={n} is not even")
    return n


# ---------------------------------------------------------------------------
# Linear systems whose unique solutions are the k = 4, 5 closed forms.

# Row shapes (as tails) in the order the systems are written down.
SYSTEM_ROWS: dict[tuple[int, str], tuple[Partition, ...]] = {
    (4, EVEN): ((), (1,), (2,), (3,), (4,), (2, 1)),
    (4, ODD): ((), (1,), (2,), (3,), (4,), (2, 1), (1, 1), (1, 1, 1)),
    (5, EVEN): ((), (1,), (2,), (3,), (4,), (1, 1), (2, 1), (2, 2), (2, 1, 1), (1, 1, 1),
                (5,), (3, 1), (1, 1, 1, 1)),
    (5, ODD): ((), (1,), (2,), (3,), (4,), (5,), (1, 1), (2, 1), (3, 1), (2, 2), (2, 1, 1),
               (1, 1, 1, 1)),
}


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    k: int
    classes: tuple[Partition, ...]
    target_rows: tuple[tuple[Partition, Fraction], ...]  # (lam, target eigenvalue)
    matrix: tuple[tuple[int, ...], ...]

    @property
    def rhs(self) -> list[Fraction]:
        """Row right-hand sides: target eigenvalue times f^lam."""
        return [t * dimension(lam) for lam, t in self.target_rows]


def constraint_system(n: int, k: int) -> ConstraintSystem:
    """The eigenvalue-target system for the (k, parity of n) closed-form classes."""
    key = (k, EVEN if n % 2 == 0 else ODD)
    if key not in SYSTEM_ROWS:
        raise ValueError(f"no linear system recorded for k={k}")
    classes = tuple(CLOSED_FORMS[key].classes(n))
    alpha = comb(n, k) - 1
    rows = tuple(
        (shape(n, *tail), F(alpha) if not tail else F(-1)) for tail in SYSTEM_ROWS[key]
    )
    matrix = tuple(tuple(mn_character(lam, c) for c in classes) for lam, _ in rows)
    return ConstraintSystem(n, k, classes, rows, matrix)


class InconsistentSystem(ArithmeticError):
    pass


def _echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int], list[int]]:
    """Fraction-free Gauss-Jordan on integer rows (last column is the rhs).

    Returns the reduced rows, the pivot column of each pivot row, and the
    indices (into the input) of rows that reduced to zero on the coefficient part.
    """
    work = [list(r) for r in rows]
    origin = list(range(len(work)))
    ncoef = len(work[0]) - 1
    pivots: list[int] = []
    r = 0
    for c in range(ncoef):
        pr = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        origin[r], origin[pr] = origin[pr], origin[r]
        p = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                row = [p[c] * x - f * y for x, y in zip(work[i], p)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                work[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
    return work, pivots, origin[r:]


def solve_constraint_system(system: ConstraintSystem) -> WeightScheme:
    """Exact unique solution; every surplus row must be consistent."""
    rhs = system.rhs
    rows = []
    for coeffs, b in zip(system.matrix, rhs):
        ints, ib = _integer_row(coeffs, b)
        rows.append(ints + [ib])
    work, pivots, dependent = _echelon(rows)
    for i, orig in zip(range(len(pivots), len(work)), dependent):
        if work[i][-1] != 0:
            lam, _ = system.target_rows[orig]
            raise InconsistentSystem(f"row {orig + 1} ({list(lam)}) contradicts the others")
    if len(pivots) < len(system.classes):
        raise InconsistentSystem(f"system is singular: rank {len(pivots)} < {len(system.classes)}")
    weights = [F(work[i][-1], work[i][pivots[i]]) for i in range(len(pivots))]
    return WeightScheme.build(system.n, system.k, zip(system.classes, weights))


def express_row(system: ConstraintSystem, row: int, using: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with row == sum c_j * using_j (matrix and rhs), or None.

    Row indices are 0-based. This turns remarks such as "the last equation is
    the sum of the second and fourth" into checkable statements.
    """
    rhs = system.rhs
    full = [list(map(F, system.matrix[i])) + [rhs[i]] for i in range(len(rhs))]
    target = full[row]
    basis = [full[j] for j in using]
    # solve basis^T c = target by exact elimination on the transposed system
    ncols = len(target)
    m = len(basis)
    aug = [[basis[j][i] for j in range(m)] + [target[i]] for i in range(ncols)]
    piv_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, ncols) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(ncols):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][-1] != 0 for i in range(r, ncols)):
        return None
    coeffs = [F(0)] * m
    for i, c in enumerate(piv_cols):
        coeffs[c] = aug[i][-1]
    return coeffs


# ---------------------------------------------------------------------------
# Exact LP search for n below the closed-form ranges.

@dataclass
class SearchResult:
    status: str  # "feasible", "infeasible" or "undecided"
    scheme: WeightScheme | None
    iterations: int
    rounds: int
    rows: int
    columns: int
    message: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "iterations": self.iterations,
            "rounds": self.rounds,
            "rows": self.rows,
            "columns": self.columns,
            "message": self.message,
            "weights": self.scheme.to_json() if self.scheme else None,
        }


def _tail_size(cls: Partition) -> int:
    return sum(cls) - cls[0]


def feasibility_search(
    n: int,
    k: int,
    even_only: bool = True,
    partition_cap: int = 50000,
    max_iter: int = 200000,
    batch: int = 40,
) -> SearchResult:
    """Search for weights with max eigenvalue C(n,k)-1 and min eigenvalue -1 at every [n-i,i].

    Constraints on the remaining eigenvalues are generated lazily: solve over a
    subset of rows, evaluate the full spectrum, add the most violated rows, and
    repeat. Candidate classes enter in stages ordered by how far they are from
    an n-cycle. Infeasibility is only claimed once every candidate class is in.
    A margin keeps every other eigenvalue at most C(n,k)-2, so the top
    eigenvalue is attained only where the row sum forces it.
    """
    from .lp import FEASIBLE, INFEASIBLE, feasible_point
    from .partitions import conjugate, derangement_classes, enumerate_partitions, partition_count
    from .schemes import class_column

    if not 2 * k <= n:
        raise ValueError("feasibility search needs 2k <= n")
    if partition_count(n) > partition_cap:
        return SearchResult("undecided", None, 0, 0, 0, 0, f"p({n}) exceeds the partition cap")
    alpha = comb(n, k) - 1
    candidates = derangement_classes(n, k, even_only=even_only)
    candidates.sort(key=_tail_size)  # stable: enumeration order within a tail size
    stages = sorted({min(len(candidates), sum(1 for c in candidates if _tail_size(c) <= t))
                     for t in (2 * k, 3 * k)} | {len(candidates)})
    shapes = enumerate_partitions(n)
    index = {lam: i for i, lam in enumerate(shapes)}
    if even_only:
        reps = [lam for lam in shapes if lam >= conjugate(lam)]
    else:
        reps = list(shapes)
    top = {shapes[0], shapes[-1]} if even_only else {shapes[0]}
    targets = {shape(n, i) for i in range(1, k + 1)}
    active_ge: list[Partition] = []
    active_le: list[Partition] = []
    for lam in reps:
        if lam in targets or lam in top:
            continue
        if lam[0] >= n - k - 2:
            active_ge.append(lam)
            active_le.append(lam)

    iterations = rounds = 0
    for stage_idx, ncols in enumerate(stages):
        cols = candidates[:ncols]
        while True:
            rounds += 1

            def row(lam):
                return [mn_character(lam, c) for c in cols]

            eq = [([1] * len(cols), alpha)] + [(row(lam), -dimension(lam)) for lam in sorted(targets)]
            ge = [(row(lam), -dimension(lam)) for lam in active_ge]
            le = [(row(lam), (alpha - 1) * dimension(lam)) for lam in active_le]
            res = feasible_point(eq, ge, le, max_iter=max_iter - iterations)
            iterations += res.iterations
            nrows = len(eq) + len(ge) + len(le)
            if res.status == INFEASIBLE:
                if stage_idx == len(stages) - 1:
                    return SearchResult("infeasible", None, iterations, rounds, nrows, len(cols),
                                        f"phase-1 optimum {res.residual} > 0 with every candidate class")
                break
            if res.status != FEASIBLE:
                return SearchResult("undecided", None, iterations, rounds, nrows, len(cols),
                                    "simplex iteration cap reached")
            support = [(c, w) for c, w in zip(cols, res.x) if w]
            columns = [class_column(c) for c, _ in support]
            violations = []
            for lam in reps:
                if lam in top:
                    continue
                idx = index[lam]
                xi = F(sum(w * col[idx] for (_, w), col in zip(support, columns))) / dimension(lam)
                if xi < -1:
                    violations.append((-1 - xi, lam, "ge"))
                elif xi > alpha - 1:
                    violations.append((xi - alpha + 1, lam, "le"))
            if not violations:
                scheme = WeightScheme.build(n, k, support)
                return SearchResult("feasible", scheme, iterations, rounds, nrows, len(cols))
            violations.sort(key=lambda v: (-v[0], index[v[1]]))
            for _, lam, kind in violations[:batch]:
                if lam not in active_ge:
                    active_ge.append(lam)
                if lam not in active_le:
                    active_le.append(lam)
    raise AssertionError("unreachable")
