from fractions import Fraction

import pytest

from bnpoly.errors import BnPolyError
from bnpoly.simplex import solve_lp


def test_basic_maximization():
    # max x + y subject to x <= 2, y <= 3, x + y <= 4, x, y >= 0
    r = solve_lp([1, 1], A_ub=[[1, 0], [0, 1], [1, 1]], b_ub=[2, 3, 4], nonneg=True)
    assert r.status == "optimal"
    assert r.objective == 4
    assert sum(r.x) == 4


def test_free_variables_and_equalities():
    # max x - y subject to x + y = 10, x - y <= 4 (x, y free)
    r = solve_lp([1, -1], A_ub=[[1, -1]], b_ub=[4], A_eq=[[1, 1]], b_eq=[10])
    assert r.status == "optimal" and r.objective == 4
    assert r.x[0] + r.x[1] == 10


def test_fractional_data():
    r = solve_lp(
        [Fraction(1, 3)],
        A_ub=[[Fraction(2, 7)]],
        b_ub=[Fraction(3, 5)],
        nonneg=True,
    )
    assert r.status == "optimal"
    assert r.objective == Fraction(1, 3) * Fraction(3, 5) / Fraction(2, 7)


def test_infeasible():
    r = solve_lp([1], A_ub=[[1], [-1]], b_ub=[1, -2], nonneg=True)
    assert r.status == "infeasible"


def test_unbounded():
    assert solve_lp([1], A_ub=[[-1]], b_ub=[0]).status == "unbounded"
    assert solve_lp([1], A_ub=[[0]], b_ub=[1], nonneg=True).status == "unbounded"


def test_negative_rhs_rows():
    # x >= 2 written as -x <= -2; max -x gives -2
    r = solve_lp([-1], A_ub=[[-1]], b_ub=[-2], nonneg=True)
    assert r.status == "optimal" and r.objective == -2 and r.x == (2,)


def test_degenerate_cube_with_redundant_rows_terminates():
    # heavy degeneracy: many redundant constraints through one optimal vertex
    A = [[1, 0], [0, 1], [1, 1], [1, 1], [2, 2], [1, 0], [0, 1]]
    b = [1, 1, 2, 2, 4, 1, 1]
    r = solve_lp([1, 1], A_ub=A, b_ub=b, nonneg=True)
    assert r.status == "optimal" and r.objective == 2


def test_redundant_equalities_are_dropped():
    r = solve_lp([1], A_eq=[[1], [2]], b_eq=[3, 6])
    assert r.status == "optimal" and r.x == (3,)


def test_duals_certify_optimality():
    A_ub = [[3, 2, 1], [2, 5, 3]]
    b_ub = [10, 15]
    c = [2, 3, 4]
    r = solve_lp(c, A_ub=A_ub, b_ub=b_ub, nonneg=True)
    assert r.status == "optimal"
    y = r.dual_ub
    assert all(v >= 0 for v in y)
    # weak duality holds with equality
    assert sum(yi * bi for yi, bi in zip(y, b_ub)) == r.objective
    for j in range(3):
        assert y[0] * A_ub[0][j] + y[1] * A_ub[1][j] >= c[j]


def test_size_mismatch_raises():
    with pytest.raises(BnPolyError):
        solve_lp([1, 2], A_ub=[[1]], b_ub=[1])
    with pytest.raises(BnPolyError):
        solve_lp([1], A_ub=[[1]], b_ub=[1, 2])
