"""Generalized Bott towers: construction, recognition, and the index family.

A tower is built stage by stage; stage ``i`` projectivizes
``O + L_1 + ... + L_{n_i}`` over the previous stage, with ``L_j`` given by
an integer twist vector on the previous fan's rays (see
:func:`logcy.fan.proj_bundle`). The first stage is ``P^{n_1}`` over a point.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import lattice
from .errors import InvalidFan, InvalidParameters, InvalidTowerSpec, LogCYError
from .fan import _build, proj_bundle, projective_space
from .fibration import (
    FanMorphism,
    fiber_type,
    is_locally_trivial,
    projection,
    split_fan,
)
from .pairs import Component, NumericalPair, classes_equal

__all__ = [
    "Stage",
    "BottTowerSpec",
    "TowerReport",
    "NotATower",
    "build_bott_tower",
    "recognize_bott_tower",
    "build_index_example",
]


@dataclass(frozen=True)
class Stage:
    dim: int
    twists: tuple = ()


@dataclass(frozen=True)
class BottTowerSpec:
    stages: tuple

    def __post_init__(self):
        stages = []
        for s in self.stages:
            if not isinstance(s, Stage):
                s = Stage(*s)
            stages.append(Stage(int(s.dim), tuple(tuple(int(x) for x in t) for t in s.twists)))
        if not stages:
            raise InvalidTowerSpec("a tower needs at least one stage")
        if any(s.dim < 1 for s in stages):
            raise InvalidTowerSpec("stage dimensions must be positive")
        if any(stages[0].twists):
            raise InvalidTowerSpec("the first stage sits over a point and takes no twists")
        n_rays = stages[0].dim + 1
        for k, s in enumerate(stages[1:], start=2):
            if len(s.twists) != s.dim:
                raise InvalidTowerSpec(
                    f"stage {k} has dimension {s.dim} but {len(s.twists)} twist vectors"
                )
            for t in s.twists:
                if len(t) != n_rays:
                    raise InvalidTowerSpec(
                        f"stage {k}: twist vector length {len(t)}, base has {n_rays} rays"
                    )
            n_rays += s.dim + 1
        object.__setattr__(self, "stages", tuple(stages))


@dataclass(frozen=True)
class NotATower:
    """Negative answer from :func:`recognize_bott_tower` (falsy)."""

    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class TowerReport:
    stage_dims: tuple
    fans: tuple  # fans[0] is the first stage, fans[-1] the total space
    morphisms: tuple  # morphisms[i] maps fans[i + 1] onto fans[i]


def _check_step(f, dim):
    split = split_fan(f)
    if is_locally_trivial(f, split) is not True:
        return False
    ft = fiber_type(f, split)
    return ft.weights is not None and ft.weights == (1,) * (dim + 1)


def build_bott_tower(spec):
    """Fans of every stage of the tower described by ``spec``."""
    if not isinstance(spec, BottTowerSpec):
        spec = BottTowerSpec(spec)
    first = spec.stages[0]
    fans = [projective_space(first.dim)]
    morphisms = []
    for s in spec.stages[1:]:
        base = fans[-1]
        top = proj_bundle(base, s.twists)
        f = projection(top, base, range(base.rank))
        if not _check_step(f, s.dim):
            raise InvalidTowerSpec("constructed stage failed the bundle checks")
        fans.append(top)
        morphisms.append(f)
    return TowerReport(tuple(s.dim for s in spec.stages), tuple(fans), tuple(morphisms))


def _candidate_order(fan):
    """Fiber ray sets to try, most recently added rays first.

    Sets are compared by their indices read from the largest down, in
    decreasing lexicographic order. Towers built here list the newest fiber
    rays last, so the top stage's fiber is always the first candidate.
    """
    n = fan.n_rays
    cands = []
    for size in range(2, fan.rank + 2):
        for S in combinations(range(n), size):
            vecs = [fan.rays[i] for i in S]
            if any(sum(col) for col in zip(*vecs)):
                continue
            if lattice.rank(vecs) != size - 1:
                continue
            cands.append(S)
    cands.sort(key=lambda S: tuple(sorted(S, reverse=True)), reverse=True)
    return cands


def _quotient(fan, S):
    """Project away the span of ``S``; return the morphism or ``None``."""
    vecs = [fan.rays[i] for i in S]
    # rows spanning the characters vanishing on S give a surjection N -> N / span(S)
    P = lattice.integer_kernel(vecs)
    k = len(P)
    rest = [i for i in range(fan.n_rays) if i not in S]
    images = []
    for i in rest:
        w = lattice.matvec(P, fan.rays[i])
        if not any(w):
            return None
        images.append(lattice.primitive_vector(w))
    uniq = list(dict.fromkeys(images))
    where = {u: j for j, u in enumerate(uniq)}
    cones = set()
    for cone in fan.max_cones:
        if len([i for i in cone if i in S]) == len(S) - 1:
            cones.add(tuple(sorted(where[images[rest.index(i)]] for i in cone if i not in S)))
    try:
        target = _build(k, uniq, cones, check=True)
        if not target.complete:
            return None
        return FanMorphism(fan, target, P)
    except LogCYError:
        return None


def recognize_bott_tower(fan):
    """Return a :class:`TowerReport`, or :class:`NotATower` if there is no tower structure.

    Smoothness is required. Candidate fibers are ray sets ``S`` with
    ``sum S = 0`` spanning a space of dimension ``|S| - 1``; the projection
    along ``span(S)`` must split, be locally trivial with fiber ``P^{|S|-1}``,
    and land on a fan that is itself a tower. The first success in the order
    of :func:`_candidate_order` wins.
    """
    if not fan.complete:
        return NotATower("fan is not complete")
    if not fan.smooth:
        return NotATower("fan is not smooth")
    if fan.n_rays == fan.rank + 1:
        return TowerReport((fan.rank,), (fan,), ())
    for S in _candidate_order(fan):
        if len(S) == fan.rank + 1:
            continue
        f = _quotient(fan, S)
        if f is None:
            continue
        try:
            if not _check_step(f, len(S) - 1):
                continue
        except LogCYError:
            continue
        below = recognize_bott_tower(f.target)
        if not below:
            continue
        return TowerReport(
            below.stage_dims + (len(S) - 1,),
            below.fans + (fan,),
            below.morphisms + (f,),
        )
    return NotATower("no fiber set gives a projective bundle over a tower")


def build_index_example(d, n, m):
    """``P(O + O(d))`` over ``P^{n-1}`` with ``B = S + (T_1 + ... + T_m + H) / m``.

    ``S`` is the negative section (fiber ray ``e``), ``T`` the positive one
    (fiber ray ``-e``) with ``T ~ S + d F``, and ``H`` is ``m n`` general
    hyperplanes pulled back from the base, each of class ``F``. Returns the
    fan and the numerical pair; the pair's lc property is not computed.
    """
    if d < 1 or n < 2 or m < 3:
        raise InvalidParameters(f"need d >= 1, n >= 2, m >= 3; got d={d}, n={n}, m={m}")
    base = projective_space(n - 1)
    twist = [d] + [0] * (base.n_rays - 1)
    fan = proj_bundle(base, [twist])
    r = fan.n_rays

    def unit(i):
        return tuple(int(j == i) for j in range(r))

    S, T, F = unit(n), unit(n + 1), unit(0)
    if not classes_equal(fan, T, tuple(s + d * f for s, f in zip(S, F))):
        raise InvalidFan("section classes do not satisfy T ~ S + dF")
    pair = NumericalPair(
        fan,
        (
            Component(S, Fraction(1), 1),
            Component(T, Fraction(1, m), m),
            Component(F, Fraction(1, m), m * n),
        ),
    )
    return fan, pair
