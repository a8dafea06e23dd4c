"""Two-phase primal simplex over the rationals with Bland's rule.

Small dense tableaux only; everything is :class:`~fractions.Fraction`.
"""

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LPResult", "solve_lp", "feasible_point"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple = ()
    value: Fraction = None

    @property
    def feasible(self):
        return self.status != "infeasible"


def _pivot(T, basis, r, c):
    row = T[r]
    inv = 1 / row[c]
    T[r] = row = [x * inv for x in row]
    for i, other in enumerate(T):
        if i != r and other[c]:
            f = other[c]
            T[i] = [x - f * y for x, y in zip(other, row)]
    basis[r] = c


def _run(T, basis, cost, allowed):
    """Maximise ``cost @ x`` on the tableau in place. Returns False if unbounded."""
    ncols = len(cost)
    while True:
        entering = None
        for j in range(ncols):
            if j not in allowed or j in basis:
                continue
            reduced = cost[j] - sum(cost[b] * T[i][j] for i, b in enumerate(basis))
            if reduced > 0:
                entering = j
                break
        if entering is None:
            return True
        leave = None  # stays None when no row bounds the entering column
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if leave is None or key < leave[0]:
                    leave = (key, i)
        if leave is None:
            return False
        _pivot(T, basis, leave[1], entering)


def solve_lp(A_eq, b_eq, c=None):
    """Maximise ``c @ x`` subject to ``A_eq @ x == b_eq`` and ``x >= 0``.

    With ``c`` omitted this is a pure feasibility problem and the first basic
    feasible solution found by phase one is returned. Columns are scanned in
    index order (Bland's rule), so results are reproducible.
    """
    m = len(A_eq)
    n = len(A_eq[0]) if m else len(c or ())
    T = []
    for row, b in zip(A_eq, b_eq):
        row = [Fraction(x) for x in row]
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        T.append(row + [Fraction(int(i == len(T))) for i in range(m)] + [b])
    basis = list(range(n, n + m))

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    _run(T, basis, phase1, set(range(n + m)))
    if any(T[i][-1] for i, b in enumerate(basis) if b >= n):
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j]), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1

    cost = [Fraction(x) for x in c] if c is not None else [Fraction(0)] * n
    cost += [Fraction(0)] * m
    if not _run(T, basis, cost, set(range(n))):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    return LPResult("optimal", tuple(x), sum(ci * xi for ci, xi in zip(cost, x)))


def feasible_point(A_eq, b_eq):
    """A nonnegative solution of ``A_eq @ x == b_eq`` or ``None``."""
    res = solve_lp(A_eq, b_eq)
    return res.x if res.feasible else None
