"""Exact phase-1 simplex for feasibility of small rational linear systems.

The tableau is kept fraction-free: every entry is an integer and the true
value is ``entry / denom`` where ``denom`` is the current basis determinant
(Edmonds' integer pivoting). Pivoting follows Bland's rule, so the method
terminates without cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNDECIDED = "undecided"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None
    iterations: int
    residual: Fraction = Fraction(0)  # phase-1 optimum; positive means infeasible


def _integer_row(coeffs: Sequence, rhs) -> tuple[list[int], int]:
    """Scale a rational row to integers."""
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    m = lcm(*(v.denominator for v in vals))
    ints = [int(v * m) for v in vals]
    return ints[:-1], ints[-1]


def feasible_point(
    eq: Sequence[tuple[Sequence, object]],
    ge: Sequence[tuple[Sequence, object]] = (),
    le: Sequence[tuple[Sequence, object]] = (),
    max_iter: int = 20000,
) -> LPResult:
    """Find x (free sign) with a.x = b on ``eq``, a.x >= b on ``ge`` and a.x <= b on ``le``.

    Each constraint is ``(coefficients, rhs)`` with rational entries.
    """
    rows_src = [(a, b, 0) for a, b in eq] + [(a, b, -1) for a, b in ge] + [(a, b, 1) for a, b in le]
    if not rows_src:
        raise ValueError("no constraints")
    nvar = len(rows_src[0][0])
    nslack = len(ge) + len(le)
    # columns: u_0..u_{nvar-1}, v_0..v_{nvar-1} (x = u - v), slacks, then rhs
    ncol = 2 * nvar + nslack
    tableau: list[list[int]] = []
    basis: list[int] = []
    artificial = []  # rows whose basic variable is artificial
    slack_idx = 2 * nvar
    for a, b, kind in rows_src:
        ia, ib = _integer_row(a, b)
        row = ia + [-c for c in ia] + [0] * nslack + [ib]
        if kind:
            # a.x + kind * s = b with s >= 0: '<=' has +s, '>=' has -s.
            row[slack_idx] = kind
            col = slack_idx
            slack_idx += 1
        else:
            col = None
        if row[-1] < 0:
            row = [-c for c in row]
        if col is not None and row[col] == 1:
            basis.append(col)
        else:
            basis.append(ncol + len(artificial))  # artificial, indexed past real columns
            artificial.append(len(tableau))
        tableau.append(row)

    # phase-1 objective row: minimise the sum of artificials, expressed in non-basic terms
    obj = [0] * (ncol + 1)
    for r in artificial:
        for j in range(ncol + 1):
            obj[j] -= tableau[r][j]
    denom = 1
    iterations = 0
    basic_cols = set(basis)
    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0 and j not in basic_cols), None)
        if enter is None:
            break
        if iterations >= max_iter:
            return LPResult(UNDECIDED, None, iterations)
        leave = None
        best = None
        for i, row in enumerate(tableau):
            if row[enter] > 0:
                ratio = Fraction(row[-1], row[enter])
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction in phase 1 cannot happen since the objective is bounded below
            raise ArithmeticError("phase-1 objective unbounded")
        p = tableau[leave][enter]
        prow = tableau[leave]
        for i, row in enumerate(tableau):
            if i == leave:
                continue
            f = row[enter]
            if f == 0:
                if p != denom:
                    tableau[i] = [(p * x) // denom for x in row]
                continue
            tableau[i] = [(p * x - f * y) // denom for x, y in zip(row, prow)]
        f = obj[enter]
        obj = [(p * x - f * y) // denom for x, y in zip(obj, prow)]
        denom = p
        if denom < 0:
            tableau = [[-x for x in row] for row in tableau]
            obj = [-x for x in obj]
            denom = -denom
        basic_cols.discard(basis[leave])
        basis[leave] = enter
        basic_cols.add(enter)
        iterations += 1

    residual = Fraction(-obj[-1], denom)
    if residual > 0:
        return LPResult(INFEASIBLE, None, iterations, residual)
    values = [Fraction(0)] * ncol
    for i, col in enumerate(basis):
        if col < ncol:
            values[col] = Fraction(tableau[i][-1], denom)
    x = [values[j] - values[nvar + j] for j in range(nvar)]
    return LPResult(FEASIBLE, x, iterations)
