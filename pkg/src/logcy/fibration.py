"""Toric morphisms between complete simplicial fans.

A :class:`FanMorphism` is an integer matrix (target rank x source rank)
mapping every source cone into some target cone. For a fibration the fan of
the source splits as fiber cones (inside the kernel) plus lifts of target
cones; :func:`split_fan` computes that splitting and refuses morphisms that
do not split that way.
"""

from dataclasses import dataclass
from math import lcm

from . import lattice
from .errors import (
    FiberNotProjectiveSpace,
    IncompatibleMorphism,
    MissingLiftedCone,
    NonUniqueLift,
    NoRayOver,
    NotLC,
    NotLocallyTrivial,
    NotSurjective,
)
from .fan import _build, fan_key, proj_bundle
from .pairs import ToricPair

__all__ = [
    "FanMorphism",
    "projection",
    "same_fan",
    "SplitResult",
    "FiberType",
    "BundleExtraction",
    "split_fan",
    "sum_decomposition_holds",
    "is_locally_trivial",
    "fiber_type",
    "extract_line_bundles",
    "rebuild_bundle",
    "cbf_pushforward",
    "MODULI_PART",
]

# the moduli part of the toric canonical bundle formula is always trivial
MODULI_PART = "trivial"


def _in_cone(fan, k, v):
    return all(x >= 0 for x in fan.cone_coordinates(k, v))


@dataclass(frozen=True)
class FanMorphism:
    source: object
    target: object
    matrix: tuple

    def __post_init__(self):
        M = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(M) != self.target.rank or any(len(r) != self.source.rank for r in M):
            raise IncompatibleMorphism(
                f"matrix must be {self.target.rank} x {self.source.rank}"
            )
        object.__setattr__(self, "matrix", M)
        for cone in self.source.max_cones:
            imgs = [self.image(self.source.rays[i]) for i in cone]
            if not any(
                all(_in_cone(self.target, k, v) for v in imgs)
                for k in range(len(self.target.max_cones))
            ):
                raise IncompatibleMorphism(
                    f"image of source cone {list(cone)} lies in no target cone"
                )

    def image(self, v):
        return lattice.matvec(self.matrix, v)


def projection(source, target, keep):
    """Morphism onto coordinates ``keep`` (list of source coordinate indices)."""
    M = [[int(j == k) for j in range(source.rank)] for k in keep]
    return FanMorphism(source, target, M)


@dataclass(frozen=True)
class SplitResult:
    fiber_rays: tuple
    lift_map: dict  # target ray -> source ray
    multiplicity: dict  # target ray -> k with f(lift) = k * u_target
    fiber_subfan: tuple
    section_subfan: tuple

    @property
    def lifted_rays(self):
        return tuple(sorted(self.lift_map.values()))


def split_fan(f):
    """Split the source fan into fiber cones and lifted target cones."""
    src, tgt = f.source, f.target
    _, D, _ = lattice.smith_normal_form(f.matrix)
    if [D[i][i] for i in range(tgt.rank)] != [1] * tgt.rank:
        raise NotSurjective("the lattice map is not surjective")

    fiber, over = [], {t: [] for t in range(tgt.n_rays)}
    for i, u in enumerate(src.rays):
        w = f.image(u)
        if not any(w):
            fiber.append(i)
            continue
        t = tgt.ray_index(lattice.primitive_vector(w))
        if t is None:
            raise NonUniqueLift(
                f"source ray {i} maps into the interior of a target cone, "
                "so the rays do not split into fiber rays and lifts"
            )
        over[t].append((i, lattice._content(w)))

    lift, mult = {}, {}
    for t, rays in over.items():
        if not rays:
            raise MissingLiftedCone(f"no source ray lies over target ray {t}")
        if len(rays) > 1:
            raise NonUniqueLift(
                f"target ray {t} has several source rays over it: "
                f"{[i for i, _ in rays]}"
            )
        lift[t], mult[t] = rays[0]

    fiber_set = set(fiber)
    fiber_subfan = tuple(c for c in src.cones if set(c) <= fiber_set)
    section = []
    for cone in tgt.cones:
        lifted = tuple(sorted(lift[t] for t in cone))
        if not src.has_cone(lifted):
            raise MissingLiftedCone(
                f"lift {list(lifted)} of target cone {list(cone)} is not a source cone"
            )
        section.append(lifted)
    return SplitResult(tuple(fiber), lift, mult, fiber_subfan, tuple(section))


def sum_decomposition_holds(f, split):
    """Check every maximal source cone is a fiber cone plus a section cone."""
    fib = set(split.fiber_subfan)
    sec = set(split.section_subfan)
    fiber_set = set(split.fiber_rays)
    for cone in f.source.max_cones:
        a = tuple(i for i in cone if i in fiber_set)
        b = tuple(i for i in cone if i not in fiber_set)
        if a not in fib or b not in sec:
            return False
    return True


def is_locally_trivial(f, split):
    """``True``, ``False`` or ``None`` (unknown).

    Lifts mapping onto a proper multiple of the primitive generator break
    local triviality. When every lift maps onto the generator and the target
    is smooth the bundle is locally trivial; over a singular target the
    criterion does not decide and ``None`` is returned.
    """
    if any(k > 1 for k in split.multiplicity.values()):
        return False
    if f.target.smooth:
        return True
    return None


@dataclass(frozen=True)
class FiberType:
    fan: object  # fan of the general fiber on Ker(f) ∩ N, or None for a point
    weights: tuple  # (c_0, ..., c_n) sorted ascending, or None
    kernel_basis: tuple


def _coordinates(basis, v):
    """Coordinates of ``v`` in a list of independent vectors (exact)."""
    cols = len(basis)
    aug = [[b[r] for b in basis] + [v[r]] for r in range(len(v))]
    M, pivots = lattice._rref(aug)
    if cols in pivots:
        raise ValueError(f"{v} is not in the span of the basis")
    return tuple(M[k][cols] for k in range(cols))


def _positive_relation(vectors):
    (rel,) = lattice.rational_kernel(lattice.transpose(vectors), len(vectors))
    den = lcm(*(x.denominator for x in rel))
    ints = lattice.primitive_vector(tuple(int(x * den) for x in rel))
    if all(x <= 0 for x in ints):
        ints = tuple(-x for x in ints)
    return ints


def fiber_type(f, split):
    """General fiber of ``f`` as a fan on the kernel lattice, with weights.

    The kernel basis comes from the Smith form of the matrix. When the fiber
    fan has exactly ``rank + 1`` rays the unique positive primitive relation
    ``sum c_i u_i = 0`` gives the weights of the weighted projective fiber.
    """
    basis = lattice.integer_kernel(f.matrix)
    r = len(basis)
    if r == 0:
        return FiberType(None, None, ())
    idx = {i: k for k, i in enumerate(split.fiber_rays)}
    rays = [
        tuple(int(x) for x in _coordinates(basis, f.source.rays[i]))
        for i in split.fiber_rays
    ]
    cones = [
        tuple(idx[i] for i in c) for c in split.fiber_subfan if len(c) == r
    ]
    fan = _build(r, rays, cones, check=False)
    weights = None
    if len(rays) == r + 1:
        rel = _positive_relation(rays)
        if all(x > 0 for x in rel):
            weights = tuple(sorted(rel))
    return FiberType(fan, weights, tuple(basis))


@dataclass(frozen=True)
class BundleExtraction:
    section: tuple  # integer matrix s with f s = identity
    fiber_basis: tuple  # v_1 .. v_n
    twists: tuple  # twists[t][i] = a_{t, i+1} for target ray t
    line_bundle_classes: tuple  # L_0 .. L_n as target-ray vectors

    def bundle_twists(self):
        """Twists in the layout :func:`logcy.fan.proj_bundle` expects."""
        return tuple(lattice.transpose(self.twists)) if self.twists else ()


def extract_line_bundles(f, split):
    """Line bundles ``L_0 = O, L_1, ..., L_n`` with ``X = P(L_0 + ... + L_n)``.

    The fiber basis is the fiber rays in ray-index order with the last one
    dropped. Each lift ``w_t`` is written as
    ``s(f(w_t)) + sum a_{t,i} v_i`` and ``L_i = O(-sum_t a_{t,i} D_t)``.
    """
    triv = is_locally_trivial(f, split)
    if triv is not True:
        raise NotLocallyTrivial(
            "the morphism is not locally trivial"
            if triv is False
            else "local triviality cannot be certified over a singular base"
        )
    ft = fiber_type(f, split)
    if ft.weights is None or any(c != 1 for c in ft.weights):
        raise FiberNotProjectiveSpace(f"fiber weights are {ft.weights}")
    s = lattice.right_inverse(f.matrix)
    basis = [f.source.rays[i] for i in split.fiber_rays[:-1]]
    twists = []
    for t in range(f.target.n_rays):
        w = f.source.rays[split.lift_map[t]]
        rest = tuple(a - b for a, b in zip(w, lattice.matvec(s, f.target.rays[t])))
        coords = _coordinates(basis, rest)
        twists.append(tuple(int(x) for x in coords))
    n = len(basis)
    classes = [tuple(0 for _ in range(f.target.n_rays))]
    for i in range(n):
        classes.append(tuple(-twists[t][i] for t in range(f.target.n_rays)))
    return BundleExtraction(s, tuple(basis), tuple(twists), tuple(classes))


def rebuild_bundle(f, extraction):
    """Rebuild the source fan from the base and the extracted twists.

    The bundle fan is mapped into the source lattice through
    ``(y, c) -> s(y) + sum c_i v_i``, so it can be compared with the source
    directly; it is identical (same ray order) for fans made by
    :func:`logcy.fan.proj_bundle`.
    """
    built = proj_bundle(f.target, extraction.bundle_twists())
    s, basis = extraction.section, extraction.fiber_basis
    k = f.target.rank

    def embed(v):
        y, c = v[:k], v[k:]
        sy = lattice.matvec(s, y)
        return tuple(
            sy[r] + sum(ci * b[r] for ci, b in zip(c, basis)) for r in range(len(sy))
        )

    rays = [embed(v) for v in built.rays]
    return _build(f.source.rank, rays, built.max_cones, check=False)


def same_fan(a, b):
    return fan_key(a) == fan_key(b)


def cbf_pushforward(pair, f):
    """Discriminant part of the toric canonical bundle formula.

    Over a target ray with generator ``u`` the source rays with
    ``f(u_s) = k u`` pull the divisor back with multiplicity ``k``, so the
    coefficient is ``1 - min (1 - b_s) / k``. The moduli part is trivial
    (:data:`MODULI_PART`).
    """
    if any(b > 1 for b in pair.coeffs):
        raise NotLC("the source pair is not log canonical")
    best = {}
    for s, u in enumerate(f.source.rays):
        w = f.image(u)
        if not any(w):
            continue
        t = f.target.ray_index(lattice.primitive_vector(w))
        if t is None:
            continue
        val = (1 - pair.coeffs[s]) / lattice._content(w)
        if t not in best or val < best[t]:
            best[t] = val
    missing = [t for t in range(f.target.n_rays) if t not in best]
    if missing:
        raise NoRayOver(f"no source ray lies over target rays {missing}")
    return ToricPair(f.target, tuple(1 - best[t] for t in range(f.target.n_rays)))
