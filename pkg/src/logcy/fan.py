"""Simplicial fans: validation, strata, star subdivisions, standard fans.

A cone is a sorted tuple of indices into its fan's ray list. Only simplicial
fans are supported, and every maximal cone is full dimensional.

Ray order in constructed fans (stable, relied on by golden files):

* ``projective_space(n)``: ``e_1, ..., e_n, -(e_1 + ... + e_n)``.
* ``weighted_projective(c_0, ..., c_n)``: ``u_1, ..., u_n, u_0``.
* ``product(A, B)``: rays of ``A`` (padded with zeros), then rays of ``B``.
* ``proj_bundle(base, twists)``: the lifts of the base rays in base order,
  then the fiber rays ``e_1, ..., e_n`` and finally ``f_0 = -(e_1 + ... + e_n)``.
  Coordinates are (base coordinates, fiber coordinates).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from . import lattice
from .errors import (
    AlreadyARay,
    DuplicateRay,
    FaceIntersectionViolation,
    InvalidFan,
    InvalidWeights,
    NonPrimitive,
    NonPrimitiveRay,
    NonSimplicialCone,
    NotInSupport,
)
from .simplex import feasible_point

__all__ = [
    "Fan",
    "validate_fan",
    "is_smooth_cone",
    "star_subdivision",
    "orbit_strata",
    "standard_fan",
    "projective_space",
    "weighted_projective",
    "product",
    "proj_bundle",
]


@dataclass(frozen=True)
class Fan:
    """A simplicial fan with full-dimensional maximal cones.

    Build instances with :func:`validate_fan` or the standard constructors;
    the flags are computed there.
    """

    rank: int
    rays: tuple
    max_cones: tuple
    complete: bool = field(compare=False)
    smooth: bool = field(compare=False)
    simplicial: bool = field(default=True, compare=False)

    @property
    def n_rays(self):
        return len(self.rays)

    @cached_property
    def _ray_lookup(self):
        return {u: i for i, u in enumerate(self.rays)}

    def ray_index(self, v):
        return self._ray_lookup.get(tuple(v))

    @cached_property
    def _inverses(self):
        # columns of the ray matrix are the cone generators
        return [
            lattice.inverse(lattice.transpose([self.rays[i] for i in cone]))
            for cone in self.max_cones
        ]

    def cone_coordinates(self, k, v):
        """Coordinates of ``v`` in the generators of maximal cone ``k``."""
        return lattice.matvec(self._inverses[k], v)

    def locate(self, v):
        """First maximal cone containing ``v``, with the coefficients of ``v``.

        Returns ``(cone, coefficients)`` keyed by ray index, or ``None`` when
        ``v`` is outside the support.
        """
        for k, cone in enumerate(self.max_cones):
            lam = self.cone_coordinates(k, v)
            if all(x >= 0 for x in lam):
                return cone, dict(zip(cone, lam))
        return None

    @cached_property
    def cones(self):
        """Every cone of the fan including the zero cone, by dimension then lex."""
        seen = set()
        for cone in self.max_cones:
            for d in range(len(cone) + 1):
                seen.update(combinations(cone, d))
        return tuple(sorted(seen, key=lambda c: (len(c), c)))

    @cached_property
    def _cone_set(self):
        return frozenset(self.cones)

    def has_cone(self, cone):
        return tuple(sorted(cone)) in self._cone_set


def _facets_shared(rank, cones):
    count = {}
    for cone in cones:
        for facet in combinations(cone, rank - 1):
            count[facet] = count.get(facet, 0) + 1
    return all(c == 2 for c in count.values())


def _improper_intersection(rays, a, b):
    """True iff cones ``a`` and ``b`` meet outside the cone on their common rays.

    Looks for ``x = sum p_i u_i = sum q_j w_j`` with ``p, q >= 0`` and unit
    mass on the rays of ``a`` not shared with ``b``.
    """
    only_a = [i for i in a if i not in b]
    if not only_a:
        return False
    rank = len(rays[0])
    cols = [rays[i] for i in a] + [tuple(-x for x in rays[j]) for j in b]
    A = [[col[r] for col in cols] for r in range(rank)]
    A.append([1 if i in only_a else 0 for i in a] + [0] * len(b))
    return feasible_point(A, [0] * rank + [1]) is not None


def _build(rank, rays, max_cones, check):
    if rank < 1:
        raise InvalidFan("rank must be positive")
    rays = tuple(tuple(int(x) for x in u) for u in rays)
    for i, u in enumerate(rays):
        if len(u) != rank:
            raise InvalidFan(f"ray {i} has length {len(u)}, expected {rank}")
        if not lattice.is_primitive(u):
            raise NonPrimitiveRay(f"ray {i} {u} is not primitive")
    if len(set(rays)) != len(rays):
        dup = next(u for u in rays if rays.count(u) > 1)
        raise DuplicateRay(f"ray {dup} listed twice")
    max_cones = list(max_cones)
    cones = []
    for cone in max_cones:
        cone = tuple(sorted(int(i) for i in cone))
        if any(i < 0 or i >= len(rays) for i in cone):
            raise InvalidFan(f"cone {list(cone)} references a missing ray")
        if len(set(cone)) != len(cone) or len(cone) != rank:
            raise NonSimplicialCone(
                f"cone {list(cone)} must have exactly {rank} distinct rays"
            )
        if lattice.det([rays[i] for i in cone]) == 0:
            raise NonSimplicialCone(f"cone {list(cone)} has linearly dependent rays")
        cones.append(cone)
    cones = tuple(sorted(set(cones)))
    if len(cones) != len(max_cones):
        raise InvalidFan("a maximal cone is listed twice")
    if check:
        for a, b in combinations(cones, 2):
            if _improper_intersection(rays, a, b) or _improper_intersection(rays, b, a):
                raise FaceIntersectionViolation(
                    f"cones {list(a)} and {list(b)} do not meet in a common face"
                )
    complete = bool(cones) and _facets_shared(rank, cones)
    smooth = all(abs(lattice.det([rays[i] for i in c])) == 1 for c in cones)
    return Fan(rank, rays, cones, complete, smooth)


def validate_fan(rank, rays, max_cones):
    """Validate raw fan data and return a :class:`Fan` with its flags."""
    return _build(rank, rays, max_cones, check=True)


def is_smooth_cone(fan, cone):
    """True iff the generators of ``cone`` extend to a lattice basis."""
    if not cone:
        return True
    _, D, _ = lattice.smith_normal_form([fan.rays[i] for i in cone])
    return all(D[i][i] == 1 for i in range(len(cone)))


def orbit_strata(fan):
    """All cones of ``fan`` as ``(cone, codimension)`` pairs.

    The zero cone is the open orbit; rays are the invariant divisors.
    """
    return [(c, fan.rank - len(c)) for c in fan.cones]


def star_subdivision(fan, v):
    """Star subdivision of ``fan`` at the primitive vector ``v``.

    Returns ``(new_fan, new_ray_index)``; the new ray is appended last.
    """
    v = tuple(int(x) for x in v)
    if len(v) != fan.rank:
        raise NotInSupport(f"vector {v} has the wrong rank")
    if not lattice.is_primitive(v):
        raise NonPrimitive(f"vector {v} is not primitive")
    if fan.ray_index(v) is not None:
        raise AlreadyARay(f"vector {v} is already ray {fan.ray_index(v)}")
    new = len(fan.rays)
    cones = []
    hit = False
    for k, cone in enumerate(fan.max_cones):
        lam = fan.cone_coordinates(k, v)
        if any(x < 0 for x in lam):
            cones.append(cone)
            continue
        hit = True
        for ray, x in zip(cone, lam):
            if x > 0:
                cones.append(tuple(i for i in cone if i != ray) + (new,))
    if not hit:
        raise NotInSupport(f"vector {v} is not in the support of the fan")
    return _build(fan.rank, fan.rays + (v,), cones, check=False), new


# --------------------------------------------------------------------------
# standard fans


def _simplex_cones(k, offset=0):
    return [tuple(i + offset for i in range(k + 1) if i != j) for j in range(k + 1)]


def projective_space(n):
    if n < 1:
        raise InvalidFan("projective space needs dimension >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    return _build(n, rays, _simplex_cones(n), check=False)


def weighted_projective(*weights):
    """Fan of ``P(c_0, ..., c_n)``: primitive rays with ``sum c_i u_i = 0``.

    When ``c_0 == 1`` the rays are ``e_1, ..., e_n`` and
    ``u_0 = -(c_1 e_1 + ... + c_n e_n)``. Otherwise the lattice is
    ``Z^{n+1} / Z c`` in the basis picked by the Smith form.
    """
    if len(weights) == 1 and not isinstance(weights[0], int):
        weights = tuple(weights[0])
    c = tuple(int(x) for x in weights)
    if len(c) < 2 or any(x <= 0 for x in c) or lattice._content(c) != 1:
        raise InvalidWeights(f"weights {c} must be positive with gcd 1")
    n = len(c) - 1
    if c[0] == 1:
        rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        rays.append(tuple(-x for x in c[1:]))
    else:
        ortho = lattice.integer_kernel([c])
        images = [tuple(m[i] for m in ortho) for i in range(n + 1)]
        rays = [lattice.primitive_vector(u) for u in images[1:] + images[:1]]
    return _build(n, rays, _simplex_cones(n), check=False)


def product(a, b):
    rank = a.rank + b.rank
    rays = [u + (0,) * b.rank for u in a.rays] + [(0,) * a.rank + w for w in b.rays]
    off = len(a.rays)
    cones = [s + tuple(i + off for i in t) for s in a.max_cones for t in b.max_cones]
    return _build(rank, rays, cones, check=False)


def proj_bundle(base, twists):
    """Fan of ``P(O + L_1 + ... + L_n)`` over the toric variety of ``base``.

    ``twists[i][t]`` is the integer ``a_{t,i+1}``: the lift of base ray ``t``
    is ``(u_t, a_{t,1}, ..., a_{t,n})``. The fiber dimension is ``len(twists)``.
    """
    n = len(twists)
    if n < 1:
        raise InvalidFan("projective bundle needs fiber dimension >= 1")
    for i, tw in enumerate(twists):
        if len(tw) != len(base.rays):
            raise InvalidFan(
                f"twist vector {i} has length {len(tw)}, base has {len(base.rays)} rays"
            )
    rays = [
        u + tuple(int(twists[i][t]) for i in range(n)) for t, u in enumerate(base.rays)
    ]
    zero = (0,) * base.rank
    rays += [zero + tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(zero + (-1,) * n)
    off = len(base.rays)
    fiber = [i + off for i in range(n + 1)]
    cones = [
        tuple(sigma) + tuple(f for f in fiber if f != fiber[j])
        for sigma in base.max_cones
        for j in range(n + 1)
    ]
    return _build(base.rank + n, rays, cones, check=False)


def standard_fan(kind, *params):
    """Dispatch to a named constructor.

    ``kind`` is one of ``projective_space``, ``weighted_projective``,
    ``product`` or ``proj_bundle``.
    """
    builders = {
        "projective_space": projective_space,
        "weighted_projective": weighted_projective,
        "product": product,
        "proj_bundle": proj_bundle,
    }
    try:
        return builders[kind](*params)
    except KeyError:
        raise ValueError(f"unknown fan kind {kind!r}") from None


def fan_key(fan):
    """Order-independent description: (rank, ray set, cone set by ray vectors)."""
    return (
        fan.rank,
        frozenset(fan.rays),
        frozenset(frozenset(fan.rays[i] for i in c) for c in fan.max_cones),
    )
