"""Boundaries on the projective plane supported on lines.

Lines are projective triples ``(a, b, c)`` for ``a x + b y + c z = 0``,
normalised so the first nonzero entry is 1. Every line is linearly
equivalent to the hyperplane class and ``K = -3H``, so the pair is log
Calabi-Yau exactly when it is lc and the coefficients sum to 3.

Log canonicity: with coefficients in ``[0, 1]``, blowing up each point where
three or more lines meet gives simple normal crossings, and the exceptional
curve over ``p`` has log discrepancy ``2 - mult_p(B)``. So the pair is lc iff
every coefficient is at most 1 and every point multiplicity is at most 2.

Associated toric boundaries of a line-supported ``B`` satisfy
``floor(B) <= T <= ceil(B)``, so their components are lines of the
arrangement; a reduced sum of lines linearly equivalent to ``-K`` has degree
3, and it is a toric boundary exactly when the three lines are not
concurrent. The candidates are therefore the non-concurrent triples.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .errors import (
    Infeasible,
    InvalidArrangement,
    NotAssociated,
    NotLC,
    NotLogCYComplexityZero,
)
from .pairs import PairReport
from .simplex import solve_lp

__all__ = [
    "PlanePair",
    "LambdaReport",
    "normalize_line",
    "incidence_points",
    "check_pair",
    "is_lc",
    "lambda_invariants",
    "associated_triangles",
    "peel",
    "decompose",
    "six_line_arrangement",
]


def normalize_line(line):
    v = tuple(Fraction(x) for x in line)
    if len(v) != 3:
        raise InvalidArrangement(f"line {line} must have three coordinates")
    lead = next((x for x in v if x), None)
    if lead is None:
        raise InvalidArrangement("the zero triple is not a line")
    return tuple(x / lead for x in v)


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class PlanePair:
    lines: tuple
    coeffs: tuple

    def __post_init__(self):
        lines = tuple(normalize_line(l) for l in self.lines)
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(lines) != len(coeffs):
            raise InvalidArrangement(
                f"{len(lines)} lines but {len(coeffs)} coefficients"
            )
        if len(set(lines)) != len(lines):
            raise InvalidArrangement("two lines coincide")
        for i, c in enumerate(coeffs):
            if not 0 <= c <= 1:
                raise InvalidArrangement(f"coefficient {c} of line {i} outside [0, 1]")
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "coeffs", coeffs)

    def with_coeffs(self, coeffs):
        return PlanePair(self.lines, coeffs)


@dataclass(frozen=True)
class LambdaReport:
    lambda1: Fraction
    lambda2: Fraction


def incidence_points(pair):
    """Intersection points of the arrangement with the lines through each.

    Points appear in order of first discovery over line pairs ``(i, j)``.
    """
    pts = {}
    for i, j in combinations(range(len(pair.lines)), 2):
        p = normalize_line(_cross(pair.lines[i], pair.lines[j]))
        if p not in pts:
            pts[p] = frozenset(
                k for k, l in enumerate(pair.lines) if _dot(l, p) == 0
            )
    return list(pts.items())


def _multiplicities(pair, coeffs=None):
    coeffs = pair.coeffs if coeffs is None else coeffs
    return [
        (p, sum(coeffs[k] for k in through), through)
        for p, through in incidence_points(pair)
    ]


def is_lc(pair):
    if any(c > 1 for c in pair.coeffs):
        return False
    return all(mult <= 2 for _, mult, _ in _multiplicities(pair))


def check_pair(pair):
    """Report complexity, index, lc and log Calabi-Yau flags."""
    total = sum(pair.coeffs)
    lc = is_lc(pair)
    log_cy = lc and total == 3
    idx = None
    if log_cy:
        idx = 1
        for c in pair.coeffs:
            idx = lcm(idx, c.denominator)
    # dim 2 plus Picard rank 1
    return PairReport(2 + 1 - total, idx, lc, log_cy)


def _concurrent(pair, tri):
    a, b, c = (pair.lines[i] for i in tri)
    return _dot(_cross(a, b), c) == 0


def _is_associated(pair, tri):
    if len(set(tri)) != 3 or _concurrent(pair, tri):
        return False
    if any(pair.coeffs[i] == 0 for i in tri):
        return False
    return all(i in tri for i, c in enumerate(pair.coeffs) if c == 1)


def associated_triangles(pair):
    """Non-concurrent triples of positive lines containing every line of coefficient 1."""
    pos = [i for i, c in enumerate(pair.coeffs) if c > 0]
    return [t for t in combinations(pos, 3) if _is_associated(pair, t)]


def peel(pair, tri, lam):
    """The pair ``(B - lam T) / (1 - lam)``."""
    lam = Fraction(lam)
    return pair.with_coeffs(
        [(c - lam * (i in tri)) / (1 - lam) for i, c in enumerate(pair.coeffs)]
    )


def lambda_invariants(pair, tri):
    """Largest multiple of ``tri`` inside ``B`` and the largest lc-preserving peel.

    Each constraint of the peeled pair is linear in ``lam``: a line outside
    the triangle needs ``b <= 1 - lam``; a point with multiplicity ``a``
    through ``c`` triangle lines needs ``a - c lam <= 2 (1 - lam)``.
    """
    tri = tuple(sorted(tri))
    if not _is_associated(pair, tri):
        raise NotAssociated(f"triangle {list(tri)} is not associated to the pair")
    if not is_lc(pair):
        raise NotLC("the pair is not log canonical")
    lam1 = min(pair.coeffs[i] for i in tri)
    if lam1 == 1:
        return LambdaReport(Fraction(1), Fraction(1))
    hi = lam1
    for i, b in enumerate(pair.coeffs):
        if i not in tri:
            hi = min(hi, 1 - b)
    for _, a, through in _multiplicities(pair):
        c = len(through & set(tri))
        # (2 - c) lam <= 2 - a; c == 2 leaves a <= 2, already known
        if c < 2:
            hi = min(hi, (2 - a) / (2 - c))
    return LambdaReport(lam1, hi)


def decompose(pair, require=()):
    """Write ``B`` as a convex combination of associated triangles.

    Solves the exact feasibility problem whose unknowns are the weights of the
    associated triangles (in lexicographic order) with one equation per line
    plus the total weight. ``require`` lists triangles that must receive
    positive weight: each is maximised separately and the optimal points are
    averaged. Returns ``[(triangle, weight), ...]`` with positive weights.
    """
    rep = check_pair(pair)
    if not rep.log_cy or rep.complexity != 0:
        raise NotLogCYComplexityZero(
            "decomposition needs a log Calabi-Yau pair of complexity zero"
        )
    tris = associated_triangles(pair)
    A = [[int(i in t) for t in tris] for i in range(len(pair.lines))]
    A.append([1] * len(tris))
    b = list(pair.coeffs) + [1]
    alarm = (
        "no convex combination of associated triangles reproduces the boundary; "
        "the input violates the log Calabi-Yau complexity zero hypothesis or "
        "this is a bug"
    )
    require = [tuple(sorted(t)) for t in require]
    for t in require:
        if t not in tris:
            raise NotAssociated(f"triangle {list(t)} is not associated to the pair")
    if not require:
        res = solve_lp(A, b)
        if not res.feasible:
            raise Infeasible(alarm)
        x = res.x
    else:
        points = []
        for t in require:
            c = [int(s == t) for s in tris]
            res = solve_lp(A, b, c)
            if not res.feasible:
                raise Infeasible(alarm)
            if res.value == 0:
                raise Infeasible(
                    f"triangle {list(t)} cannot carry positive weight in any "
                    "decomposition"
                )
            points.append(res.x)
        x = [sum(col) / len(points) for col in zip(*points)]
    return [(t, w) for t, w in zip(tris, x) if w > 0]


def six_line_arrangement():
    """Four lines through ``[0:0:1]`` plus two general lines, all with coefficient 1/2."""
    lines = [
        (1, 0, 0),
        (0, 1, 0),
        (1, 1, 0),
        (1, -1, 0),
        (1, 2, 3),
        (3, 1, -2),
    ]
    return PlanePair(lines, [Fraction(1, 2)] * 6)
