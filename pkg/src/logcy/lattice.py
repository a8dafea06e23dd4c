"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints (arbitrary precision) and matrices are
tuples of row tuples. Rational work uses :class:`fractions.Fraction`; no
floating point is used anywhere.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import BoundExceeded, ZeroVector

__all__ = [
    "primitive_vector",
    "is_primitive",
    "smith_normal_form",
    "lattice_membership",
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "rank",
    "det",
    "inverse",
    "solve",
    "rational_kernel",
    "integer_kernel",
    "right_inverse",
    "in_rational_span",
]


def _content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive_vector(v):
    """Divide ``v`` by the gcd of its coordinates.

    >>> primitive_vector((-3, 6, 9))
    (-1, 2, 3)
    """
    g = _content(v)
    if g == 0:
        raise ZeroVector(f"zero vector {tuple(v)} has no primitive generator")
    return tuple(x // g for x in v)


def is_primitive(v):
    return _content(v) == 1


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


# --------------------------------------------------------------------------
# Smith normal form


def _find_pivot(A, t, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            a = A[i][j]
            if a and (best is None or abs(a) < best[0]):
                best = (abs(a), i, j)
    return best


def smith_normal_form(A):
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` in Smith normal form.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...``. The pivot at each stage is the entry of
    smallest absolute value in the remaining block, ties going to the lowest
    row and then the lowest column, so the output is deterministic.
    """
    A = [list(r) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for M in (A, V):
            for row in M:
                row[j], row[k] = row[k], row[j]

    def row_axpy(dst, src, q):
        # row[dst] -= q * row[src]
        for M in (A, U):
            rd, rs = M[dst], M[src]
            for c in range(len(rd)):
                rd[c] -= q * rs[c]

    def col_axpy(dst, src, q):
        for M in (A, V):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        best = _find_pivot(A, t, range(t, m), range(t, n))
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_axpy(i, t, A[i][t] // p)
            for j in range(t + 1, n):
                if A[t][j]:
                    col_axpy(j, t, A[t][j] // p)
            # remainders are smaller than the pivot; move the smallest in
            rest = _find_pivot(A, t, range(t + 1, m), [t])
            rest_c = _find_pivot(A, t, [t], range(t + 1, n))
            cands = [c for c in (rest, rest_c) if c is not None]
            if cands:
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    as_t = lambda M: tuple(tuple(r) for r in M)  # noqa: E731
    return as_t(U), as_t(A), as_t(V)


def _diag(D):
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def lattice_membership(A, b, bound=10**6):
    """Smallest ``m >= 1`` with ``m * b`` in the integer column span of ``A``.

    ``b`` may hold rationals. Returns ``None`` when ``b`` is not even in the
    rational span, in which case no multiple ever works. Raises
    :class:`BoundExceeded` when the minimal multiple is larger than ``bound``.
    """
    b = [Fraction(x) for x in b]
    if len(A) != len(b):
        raise ValueError(f"matrix has {len(A)} rows but vector has {len(b)} entries")
    if not A or not A[0]:
        return 1 if all(x == 0 for x in b) else None
    U, D, _ = smith_normal_form(A)
    c = [sum(u * x for u, x in zip(row, b)) for row in U]
    d = _diag(D)
    r = sum(1 for x in d if x)
    if any(c[i] for i in range(r, len(c))):
        return None
    m = 1
    for i in range(r):
        m = lcm(m, (c[i] / d[i]).denominator)
    if m > bound:
        raise BoundExceeded(f"minimal multiple {m} exceeds bound {bound}")
    return m


# --------------------------------------------------------------------------
# rational elimination


def _rref(A):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A):
    return len(_rref(A)[1]) if A else 0


def det(A):
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        result *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return result


def inverse(A):
    """Inverse of a square nonsingular matrix over Q."""
    n = len(A)
    aug = [list(row) + list(e) for row, e in zip(A, identity(n))]
    M, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in M)


def solve(A, b):
    """Solve ``A x = b`` for square nonsingular ``A`` over Q."""
    aug = [list(row) + [x] for row, x in zip(A, b)]
    M, pivots = _rref(aug)
    n = len(A)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(M[i][n] for i in range(n))


def rational_kernel(A, ncols=None):
    """Basis of the right kernel of ``A`` over Q, as a list of vectors."""
    if ncols is None:
        ncols = len(A[0])
    if not A:
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    M, pivots = _rref(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -M[r][f]
        basis.append(tuple(v))
    return basis


def integer_kernel(A):
    """Basis (as vectors) of the saturated lattice ``ker(A) ∩ Z^n``.

    Read off from the trailing columns of ``V`` in the Smith form, so the
    choice is deterministic.
    """
    n = len(A[0])
    _, D, V = smith_normal_form(A)
    r = sum(1 for x in _diag(D) if x)
    return [tuple(V[i][j] for i in range(n)) for j in range(r, n)]


def right_inverse(A):
    """Integer ``S`` with ``A @ S == I`` for a lattice-surjective ``A``.

    Raises ``ValueError`` if ``A`` is not surjective onto ``Z^m``.
    """
    m = len(A)
    U, D, V = smith_normal_form(A)
    if _diag(D) != [1] * m:
        raise ValueError("matrix is not surjective onto the integer lattice")
    n = len(V)
    Vm = tuple(tuple(V[i][j] for j in range(m)) for i in range(n))
    return matmul(Vm, U)


def in_rational_span(A, b):
    """True iff ``b`` is a rational combination of the columns of ``A``."""
    if not A or not A[0]:
        return all(x == 0 for x in b)
    return rank(A) == rank([list(row) + [x] for row, x in zip(A, b)])
