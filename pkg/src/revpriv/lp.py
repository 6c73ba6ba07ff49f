"""Exact feasibility of ``M u >= b, u >= 0`` over the rationals.

The kernel is a dual simplex on an integer-preserving (Edmonds/Bareiss)
tableau: entries stay Python ints sharing one denominator, so there is no
rounding and no Fraction arithmetic in the inner loop. Bland's smallest
index rule picks both leaving and entering variables, which rules out
cycling.

Starting from the all-slack basis with cost ``sum(u)`` is dual feasible
whenever ``b`` is arbitrary, so no Phase-I artificials are needed. On
termination either every basic value is non-negative (a feasible point,
in fact one minimizing ``sum(u)``) or some row proves infeasibility; that
row's slack coefficients are Farkas multipliers.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InternalInvariantViolation

MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    point: tuple[Fraction, ...] | None = None
    farkas: tuple[int, ...] | None = None
    pivots: int = 0


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def solve_feasibility(
    matrix: Sequence[Sequence[int]],
    rhs: Sequence[int],
    n_vars: int | None = None,
    cost: Sequence[int] | None = None,
) -> FeasibilityResult:
    """Decide whether some ``u >= 0`` satisfies ``matrix @ u >= rhs``.

    Args:
        matrix: integer rows, each of length ``n_vars``.
        rhs: integer right-hand side, one entry per row.
        n_vars: number of columns; needed only when ``matrix`` is empty.
        cost: non-negative integer objective to minimize (default all ones).

    Returns:
        A :class:`FeasibilityResult`. ``point`` is an exact feasible vector.
        ``farkas`` is a list of non-negative integers ``lam`` with
        ``lam @ matrix <= 0`` componentwise and ``lam @ rhs > 0``.
    """
    m = len(matrix)
    n = n_vars if n_vars is not None else (len(matrix[0]) if m else 0)
    if cost is None:
        cost = [1] * n
    if any(c < 0 for c in cost):
        raise ValueError("cost must be non-negative for the all-slack basis to be dual feasible")
    width = n + m + 1

    # row i encodes  -M_i u + s_i = -b_i ; the last row holds reduced costs
    tab: list[list[int]] = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        t = [-int(a) for a in row] + [0] * m + [-int(rhs[i])]
        t[n + i] = 1
        tab.append(t)
    tab.append([int(c) for c in cost] + [0] * (m + 1))
    basis = [n + i for i in range(m)]
    denom = 1
    pivots = 0

    while True:
        sd = _sign(denom)
        leaving = None
        for i in sorted(range(m), key=basis.__getitem__):
            if tab[i][-1] * sd < 0:
                leaving = i
                break
        if leaving is None:
            values = [Fraction(0)] * (n + m)
            for i, var in enumerate(basis):
                values[var] = Fraction(tab[i][-1], denom)
            return FeasibilityResult(True, point=tuple(values[:n]), pivots=pivots)

        row = tab[leaving]
        obj = tab[m]
        in_basis = set(basis)
        entering = None
        best = None
        for j in range(n + m):
            if j in in_basis or row[j] * sd >= 0:
                continue
            ratio = Fraction(obj[j], -row[j])
            if best is None or ratio < best:
                best, entering = ratio, j
        if entering is None:
            lam = [row[n + i] * sd for i in range(m)]
            g = 0
            for x in lam:
                g = gcd(g, x)
            lam = [x // g for x in lam]
            return FeasibilityResult(False, farkas=tuple(lam), pivots=pivots)

        p = row[entering]
        for i, t in enumerate(tab):
            if i == leaving:
                continue
            f = t[entering]
            if f:
                new = [p * a - f * b for a, b in zip(t, row)]
            else:
                new = [p * a for a in t]
            if denom != 1:
                q = []
                for a in new:
                    d, r = divmod(a, denom)
                    if r:
                        raise InternalInvariantViolation("non-exact division in integer pivot")
                    q.append(d)
                new = q
            tab[i] = new
        denom = p
        basis[leaving] = entering
        pivots += 1
        if pivots > MAX_PIVOTS:
            raise InternalInvariantViolation("dual simplex exceeded its pivot budget")


def check_point(matrix: Sequence[Sequence[int]], rhs: Sequence[int], point: Sequence[Fraction]) -> bool:
    if any(x < 0 for x in point):
        return False
    return all(sum(a * x for a, x in zip(row, point) if a) >= b for row, b in zip(matrix, rhs))


def check_farkas(
    matrix: Sequence[Sequence[int]], rhs: Sequence[int], lam: Sequence[int], n_vars: int
) -> bool:
    """Verify ``lam >= 0``, ``lam @ matrix <= 0`` and ``lam @ rhs > 0``."""
    if len(lam) != len(matrix) or any(x < 0 for x in lam):
        return False
    combo = [0] * n_vars
    for weight, row in zip(lam, matrix):
        if weight:
            for j, a in enumerate(row):
                combo[j] += weight * a
    return all(c <= 0 for c in combo) and sum(w * b for w, b in zip(lam, rhs)) > 0
