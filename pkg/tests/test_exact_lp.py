"""Tests for cst/exact_lp.py: exact phase-1 feasibility."""
from fractions import Fraction

import pytest

from cst.exact_lp import feasible_point
from cst.kernel import DomainError


def residual(A, b, x):
    return [sum(Fraction(a) * v for a, v in zip(row, x)) - Fraction(rhs) for row, rhs in zip(A, b)]


def test_simple_feasible():
    A = [[1, 1], [1, -1]]
    b = [2, 0]
    x = feasible_point(A, b)
    assert x == (1, 1)


def test_infeasible_sign():
    assert feasible_point([[1, 1]], [-1]) is None


def test_infeasible_pair():
    assert feasible_point([[1, 0], [1, 0]], [1, 2]) is None


def test_redundant_rows():
    A = [[1, 2, 3], [2, 4, 6], [1, 1, 1]]
    b = ["1/2", 1, "1/3"]
    x = feasible_point(A, b)
    assert x is not None
    assert all(v >= 0 for v in x)
    assert residual(A, b, x) == [0, 0, 0]


def test_negative_rhs_is_normalized():
    x = feasible_point([[-1, 1]], [-2])
    assert x is not None
    assert -x[0] + x[1] == -2


def test_degenerate_system_terminates():
    A = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]
    b = [0, 0, 0]
    assert feasible_point(A, b) == (0, 0, 0, 0)


def test_malformed():
    with pytest.raises(DomainError):
        feasible_point([], [])
    with pytest.raises(DomainError):
        feasible_point([[1, 2], [1]], [1, 1])
