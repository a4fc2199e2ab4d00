import random
from fractions import Fraction

import pytest

from setwise_ekr.lp import FEASIBLE, INFEASIBLE, UNDECIDED, feasible_point


def _dot(a, x):
    return sum(Fraction(c) * v for c, v in zip(a, x))


def _satisfies(res, eq, ge, le):
    return (all(_dot(a, res.x) == b for a, b in eq)
            and all(_dot(a, res.x) >= b for a, b in ge)
            and all(_dot(a, res.x) <= b for a, b in le))


def test_simple_feasible():
    eq = [([1, 1], 3)]
    ge = [([1, 0], 1)]
    le = [([0, 1], Fraction(1, 2))]
    res = feasible_point(eq, ge, le)
    assert res.status == FEASIBLE
    assert _satisfies(res, eq, ge, le)


def test_free_variables_can_go_negative():
    res = feasible_point([([1, 0], -5), ([0, 1], Fraction(-7, 3))])
    assert res.status == FEASIBLE and res.x == [-5, Fraction(-7, 3)]


def test_simple_infeasible():
    res = feasible_point([([1, 1], 1)], ge=[([1, 0], 1), ([0, 1], 1)])
    assert res.status == INFEASIBLE and res.residual > 0


def test_inconsistent_equalities():
    res = feasible_point([([1, 2], 1), ([2, 4], 3)])
    assert res.status == INFEASIBLE


def test_iteration_cap_gives_undecided():
    eq = [([1, 1, 1], 3)]
    ge = [([1, 0, 0], 1), ([0, 1, 0], 1)]
    res = feasible_point(eq, ge, max_iter=0)
    assert res.status == UNDECIDED


def test_no_constraints_rejected():
    with pytest.raises(ValueError):
        feasible_point([])


def test_random_against_highs():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = random.Random(20240601)
    agree = 0
    for _ in range(120):
        nvar = rng.randint(1, 4)

        def row():
            return [rng.randint(-3, 3) for _ in range(nvar)], Fraction(rng.randint(-6, 6), rng.randint(1, 3))

        eq = [row() for _ in range(rng.randint(0, 2))]
        ge = [row() for _ in range(rng.randint(0, 4))]
        le = [row() for _ in range(rng.randint(0, 3))]
        if not (eq or ge or le):
            continue
        res = feasible_point(eq, ge, le)
        a_ub = [[-c for c in a] for a, _ in ge] + [a for a, _ in le]
        b_ub = [-float(b) for _, b in ge] + [float(b) for _, b in le]
        ref = scipy_opt.linprog(
            [0] * nvar,
            A_ub=a_ub or None, b_ub=b_ub or None,
            A_eq=[a for a, _ in eq] or None, b_eq=[float(b) for _, b in eq] or None,
            bounds=[(None, None)] * nvar, method="highs",
        )
        if res.status == FEASIBLE:
            assert _satisfies(res, eq, ge, le)
            assert ref.status == 0
        else:
            assert res.status == INFEASIBLE
            assert ref.status == 2
        agree += 1
    assert agree > 100
