"""Exact two-phase simplex over Fractions (Bland's rule, so it terminates).

Only used for small feasibility questions; every answer it gives is turned
into an integer witness that callers check exactly.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _pivot(T, basis, r, c):
    pv = T[r][c]
    T[r] = [x / pv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def _run(T, basis, cost, allowed):
    """Minimize cost @ x over the tableau rows T (last column = rhs)."""
    m = len(T)
    while True:
        red = list(cost)
        for i in range(m):
            cb = cost[basis[i]]
            if cb:
                red = [a - cb * b for a, b in zip(red, T[i][:-1])]
        enter = next((j for j in allowed if red[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(T, basis, best[1], enter)


def _phase_one(A, b, n):
    """Feasible basis for {A x = b, x >= 0}, or (None, None)."""
    m = len(A)
    T = []
    for i, (a, rhs) in enumerate(zip(A, b)):
        a = [Fraction(x) for x in a]
        rhs = Fraction(rhs)
        if rhs < 0:
            a, rhs = [-x for x in a], -rhs
        T.append(a + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m
    _run(T, basis, cost, range(n + m))
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return None, None
    for i in range(m):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, basis, i, j)
    keep = [i for i in range(m) if basis[i] < n]
    return [T[i][:n] + [T[i][-1]] for i in keep], [basis[i] for i in keep]


def solve_lp(
    objective: Sequence,
    ineq: Sequence[tuple[Sequence, object]] = (),
    eq: Sequence[tuple[Sequence, object]] = (),
    free: bool = False,
) -> list[Fraction] | None:
    """Minimize ``objective @ x`` subject to ``a @ x <= b`` and ``a @ x == b``.

    Variables are nonnegative unless ``free``. Returns an optimal vertex as
    Fractions, or None when infeasible. Raises ValueError when unbounded.
    """
    n = len(objective)
    nslack = len(ineq)
    total = (2 * n if free else n) + nslack

    def expand(a):
        a = [Fraction(x) for x in a]
        return a + [-x for x in a] if free else a

    A, b = [], []
    for k, (a, rhs) in enumerate(ineq):
        A.append(expand(a) + [Fraction(int(k == j)) for j in range(nslack)])
        b.append(rhs)
    for a, rhs in eq:
        A.append(expand(a) + [Fraction(0)] * nslack)
        b.append(rhs)
    cost = expand(objective) + [Fraction(0)] * nslack
    if not A:
        if any(cost):
            raise ValueError("unbounded")
        return [Fraction(0)] * n
    T, basis = _phase_one(A, b, total)
    if T is None:
        return None
    if not _run(T, basis, cost, range(total)):
        raise ValueError("unbounded")
    x = [Fraction(0)] * total
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    if free:
        return [x[i] - x[n + i] for i in range(n)]
    return x[:n]
