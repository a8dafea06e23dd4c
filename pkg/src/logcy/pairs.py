"""Pairs on complete simplicial toric varieties.

A :class:`ToricPair` carries one rational coefficient per ray, so its
boundary is torus invariant. A :class:`NumericalPair` only knows each
boundary component up to linear equivalence, through an integer vector of
ray coefficients representing its class.

Conventions:

* ``K_X = -(sum of all invariant prime divisors)``.
* The principal invariant divisors are ``sum <m, u_r> D_r`` for characters
  ``m``, i.e. the integer column span of the ray matrix.
* The rank of Weil divisors modulo algebraic equivalence is taken as
  ``n_rays - rank`` (the free rank of the class group); torsion is ignored.
* ``log_discrepancy`` is defined on primitive lattice vectors. Its
  homogeneous extension ``A(k v) = k A(v)`` is what :func:`support_value`
  evaluates on arbitrary lattice points.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import ceil, floor, lcm

from . import lattice
from .errors import (
    IncompleteFan,
    InvalidPair,
    NonPrimitive,
    NotInSupport,
    NotLC,
    NotLogCY,
    UnboundedPolytope,
)
from .fan import star_subdivision

__all__ = [
    "ToricPair",
    "Component",
    "NumericalPair",
    "PairReport",
    "full_boundary",
    "complexity",
    "index",
    "log_discrepancy",
    "support_value",
    "is_lc",
    "lc_centers",
    "pullback_star_subdivision",
    "classes_equal",
    "divisor_sections",
    "report",
]


@dataclass(frozen=True)
class ToricPair:
    fan: object
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.fan.n_rays:
            raise InvalidPair(
                f"{len(coeffs)} coefficients given for {self.fan.n_rays} rays"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_boundary(self):
        return all(0 <= c <= 1 for c in self.coeffs)


@dataclass(frozen=True)
class Component:
    cls: tuple
    coeff: Fraction
    count: int = 1


@dataclass(frozen=True)
class NumericalPair:
    fan: object
    components: tuple

    def __post_init__(self):
        comps = []
        for i, c in enumerate(self.components):
            if not isinstance(c, Component):
                c = Component(*c)
            cls = tuple(int(x) for x in c.cls)
            coeff = Fraction(c.coeff)
            if len(cls) != self.fan.n_rays:
                raise InvalidPair(f"component {i}: class has length {len(cls)}")
            if not 0 <= coeff <= 1:
                raise InvalidPair(f"component {i}: coefficient {coeff} outside [0, 1]")
            if int(c.count) < 1:
                raise InvalidPair(f"component {i}: count must be positive")
            comps.append(Component(cls, coeff, int(c.count)))
        object.__setattr__(self, "components", tuple(comps))


@dataclass(frozen=True)
class PairReport:
    complexity: Fraction
    index: object  # int, or None when not log Calabi-Yau
    lc: object  # bool, or None when unknown
    log_cy: bool


def full_boundary(fan):
    return ToricPair(fan, (1,) * fan.n_rays)


def _require_complete(fan):
    if not fan.complete:
        raise IncompleteFan("the fan is not complete")


def _ray_matrix(fan):
    return fan.rays


def complexity(pair):
    """``dim X + rank WDiv_alg(X) - |B|``."""
    fan = pair.fan
    _require_complete(fan)
    if isinstance(pair, NumericalPair):
        size = sum(c.count * c.coeff for c in pair.components)
    else:
        size = sum(pair.coeffs)
    return fan.rank + (fan.n_rays - fan.rank) - size


def _canonical_plus_boundary(pair):
    if isinstance(pair, NumericalPair):
        v = [Fraction(-1)] * pair.fan.n_rays
        for c in pair.components:
            for r, x in enumerate(c.cls):
                v[r] += c.count * c.coeff * x
        return v
    return [b - 1 for b in pair.coeffs]


def index(pair, bound=10**6):
    """Smallest ``m >= 1`` with ``m (K_X + B)`` linearly equivalent to zero.

    For a numerical pair each of the ``count`` members of a component is a
    distinct prime divisor, so ``m`` must also clear every coefficient's
    denominator. Raises :class:`NotLogCY` when ``K_X + B`` is not
    Q-linearly trivial.
    """
    _require_complete(pair.fan)
    v = _canonical_plus_boundary(pair)
    m = lattice.lattice_membership(_ray_matrix(pair.fan), v, bound=bound)
    if m is None:
        raise NotLogCY("K_X + B is not Q-linearly trivial")
    if isinstance(pair, NumericalPair):
        for c in pair.components:
            m = lcm(m, c.coeff.denominator)
    return m


def support_value(pair, v):
    """Homogeneous log discrepancy ``sum lambda_i (1 - b_i)`` at any lattice point."""
    hit = pair.fan.locate(v)
    if hit is None:
        raise NotInSupport(f"vector {tuple(v)} is not in the support of the fan")
    _, lam = hit
    return sum(x * (1 - pair.coeffs[r]) for r, x in lam.items())


def log_discrepancy(pair, v):
    """Log discrepancy of the toric valuation of the primitive vector ``v``."""
    v = tuple(int(x) for x in v)
    if not lattice.is_primitive(v):
        raise NonPrimitive(f"vector {v} is not primitive")
    return support_value(pair, v)


def is_lc(pair):
    return all(b <= 1 for b in pair.coeffs)


def lc_centers(pair):
    """Nonzero cones all of whose rays carry coefficient one (strata of the round-down)."""
    if not is_lc(pair):
        raise NotLC("some coefficient exceeds one")
    return [
        c for c in pair.fan.cones if c and all(pair.coeffs[i] == 1 for i in c)
    ]


def pullback_star_subdivision(pair, v):
    """Log pullback of ``pair`` to the star subdivision at ``v``.

    The new ray (last) gets coefficient ``1 - log_discrepancy(pair, v)``,
    which may be negative (a sub-pair).
    """
    a = log_discrepancy(pair, v)
    fan, _ = star_subdivision(pair.fan, v)
    return ToricPair(fan, pair.coeffs + (1 - a,))


def classes_equal(fan, d1, d2, mode="integral"):
    """Whether two ray-indexed divisors are linearly (or Q-linearly) equivalent."""
    _require_complete(fan)
    diff = [Fraction(a) - Fraction(b) for a, b in zip(d1, d2)]
    if mode == "rational":
        return lattice.in_rational_span(_ray_matrix(fan), diff)
    if mode != "integral":
        raise ValueError(f"unknown mode {mode!r}")
    if any(x.denominator != 1 for x in diff):
        return False
    return lattice.lattice_membership(_ray_matrix(fan), diff) == 1


def section_box(fan, d):
    """Integer bounding box of ``{m : <m, u_r> >= -d_r}``.

    Each ``+-e_i`` sits in some cone as ``sum lambda_j u_j`` with
    ``lambda >= 0``, which bounds ``+-m_i`` by ``sum lambda_j d_j``.
    """
    box = []
    for i in range(fan.rank):
        bounds = []
        for sign in (1, -1):
            e = tuple(sign * int(i == j) for j in range(fan.rank))
            hit = fan.locate(e)
            if hit is None:
                raise UnboundedPolytope("the fan is not complete; polytope unbounded")
            bounds.append(sum(x * d[r] for r, x in hit[1].items()))
        # sign * m_i >= -bound
        box.append((ceil(-bounds[0]), floor(bounds[1])))
    return box


def divisor_sections(fan, d):
    """Number of characters ``m`` with ``<m, u_r> >= -d_r`` for every ray.

    This is ``h^0`` of the invariant divisor ``sum d_r D_r``.
    """
    d = [int(x) for x in d]
    if len(d) != fan.n_rays:
        raise InvalidPair(f"divisor has {len(d)} entries for {fan.n_rays} rays")
    box = section_box(fan, d)
    count = 0
    for m in iproduct(*(range(lo, hi + 1) for lo, hi in box)):
        if all(sum(a * b for a, b in zip(m, u)) >= -dr for u, dr in zip(fan.rays, d)):
            count += 1
    return count


def report(pair):
    """Complexity, index, lc flag and log Calabi-Yau flag of a pair.

    The lc flag of a numerical pair is ``None``: its components are only
    known up to linear equivalence.
    """
    c = complexity(pair)
    try:
        m = index(pair)
    except NotLogCY:
        m = None
    if isinstance(pair, NumericalPair):
        lc = None
        log_cy = m is not None
    else:
        lc = is_lc(pair)
        log_cy = lc and m is not None
    return PairReport(c, m, lc, log_cy)
