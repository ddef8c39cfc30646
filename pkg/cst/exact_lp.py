#!/usr/bin/env python
"""
Exact LP: phase-1 simplex over Fractions.

Decides whether {x ≥ 0 : A x = b} is nonempty and returns a witness.
Bland's rule is used for both entering and leaving variables, so the
method terminates on degenerate systems.
"""
# ========================================================
# IMPORTS
# ========================================================
import logging
from collections.abc import Sequence
from fractions import Fraction

# --------------------------------------------------------
# Local Imports
# --------------------------------------------------------
from cst.kernel import DomainError
from cst.utils import parse_rational

# ========================================================
# GLOBALS
# ========================================================
_log = logging.getLogger("CST.exact_lp")


# ========================================================
# FUNCTIONS
# ========================================================
def _pivot(tableau: list[list[Fraction]], cost: list[Fraction], r: int, j: int) -> None:
    row = tableau[r]
    p = row[j]
    tableau[r] = row = [v / p for v in row]
    for i, other in enumerate(tableau):
        if i != r and other[j] != 0:
            f = other[j]
            tableau[i] = [a - f * b for a, b in zip(other, row, strict=True)]
    if cost[j] != 0:
        f = cost[j]
        cost[:] = [a - f * b for a, b in zip(cost, row, strict=True)]


def feasible_point(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Return x ≥ 0 with A x = b, or None when the system is infeasible."""
    rows = [[parse_rational(v) for v in row] for row in A]
    rhs = [parse_rational(v) for v in b]
    if not rows or len(rows) != len(rhs):
        raise DomainError("feasible_point needs a nonempty system with one rhs per row")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DomainError("constraint rows have different lengths")
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # columns: n originals, m artificials, rhs
    width = n + m
    tableau = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs of "minimize Σ artificials"; cost[width] holds -objective
    cost = [-sum((tableau[i][j] for i in range(m)), Fraction(0)) for j in range(n)]
    cost += [Fraction(0)] * m + [-sum(rhs, Fraction(0))]

    pivots = 0
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                key = (tableau[i][width] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        # phase 1 is bounded below by 0, so some row always qualifies
        r = best[1]
        _pivot(tableau, cost, r, entering)
        basis[r] = entering
        pivots += 1

    _log.debug("phase 1 finished after %d pivots, objective %s", pivots, -cost[width])
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tableau[i][width]
    return tuple(x)
