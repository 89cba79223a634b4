"""Exact phase-one simplex over the rationals (Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def nonnegative_solution(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Return some ``x >= 0`` with ``a @ x == b``, or None if none exists."""
    rows = len(a)
    n = len(a[0]) if rows else 0
    t = []
    for i in range(rows):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        t.append(row + [Fraction(int(i == j)) for j in range(rows)] + [rhs])
    basis = [n + i for i in range(rows)]
    # objective: minimise the sum of artificials, written as reduced costs
    cost = [Fraction(0)] * (n + rows + 1)
    for row in t:
        for j in range(n):
            cost[j] -= row[j]
        cost[-1] -= row[-1]

    while True:
        enter = next((j for j in range(n + rows) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(t):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen in phase one (objective bounded below)
            break
        i = best[1]
        piv = t[i][enter]
        t[i] = [x / piv for x in t[i]]
        for k in range(rows):
            if k != i and t[k][enter] != 0:
                f = t[k][enter]
                t[k] = [x - f * y for x, y in zip(t[k], t[i])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, t[i])]
        basis[i] = enter

    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = t[i][-1]
    return x
