import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import box_vectors, random_fan
from logcy import lattice
from logcy.errors import (
    AlreadyARay,
    DuplicateRay,
    FaceIntersectionViolation,
    InvalidWeights,
    NonPrimitive,
    NonPrimitiveRay,
    NonSimplicialCone,
)
from logcy.fan import (
    fan_key,
    is_smooth_cone,
    orbit_strata,
    product,
    proj_bundle,
    projective_space,
    standard_fan,
    star_subdivision,
    validate_fan,
    weighted_projective,
)

P2_RAYS = [(1, 0), (0, 1), (-1, -1)]
P2_CONES = [(0, 1), (1, 2), (0, 2)]


def test_p2_flags():
    fan = validate_fan(2, P2_RAYS, P2_CONES)
    assert fan.complete and fan.smooth and fan.simplicial
    assert fan.max_cones == ((0, 1), (0, 2), (1, 2))
    assert fan == projective_space(2)


def test_p2_strata():
    strata = orbit_strata(projective_space(2))
    assert len(strata) == 7
    assert sorted(c for _, c in strata) == [0, 0, 0, 1, 1, 1, 2]


def test_blowup_strata_and_order():
    fan, k = star_subdivision(projective_space(2), (1, 1))
    assert k == 3 and fan.rays[-1] == (1, 1)
    assert len(orbit_strata(fan)) == 9
    assert fan.max_cones == ((0, 2), (0, 3), (1, 2), (1, 3))
    assert fan.smooth and fan.complete


def test_incomplete_fan():
    fan = validate_fan(2, [(1, 0), (0, 1)], [(0, 1)])
    assert not fan.complete


@pytest.mark.parametrize(
    "rays, cones, err",
    [
        ([(2, 0), (0, 1), (-1, -1)], P2_CONES, NonPrimitiveRay),
        ([(1, 0), (1, 0), (-1, -1)], P2_CONES, DuplicateRay),
        ([(1, 0), (0, 1), (-1, -1)], [(0, 1, 2)], NonSimplicialCone),
        ([(1, 0), (-1, 0), (0, 1)], [(0, 1)], NonSimplicialCone),
        ([(1, 0), (0, 1), (1, 2), (-1, -1)], [(0, 1), (0, 2), (1, 3), (0, 3)], FaceIntersectionViolation),
    ],
)
def test_invalid_fans(rays, cones, err):
    with pytest.raises(err):
        validate_fan(2, rays, cones)


def test_singular_cone():
    fan = validate_fan(2, [(1, 0), (1, 2), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    assert not fan.smooth
    assert not is_smooth_cone(fan, (0, 1))
    assert is_smooth_cone(fan, (0, 2))


def test_weighted_projective():
    fan = weighted_projective(1, 2, 3)
    assert fan.rays == ((1, 0), (0, 1), (-2, -3))
    assert fan.complete and not fan.smooth
    with pytest.raises(InvalidWeights):
        weighted_projective(2, 4)
    w = weighted_projective(2, 3, 5)
    assert w.complete
    # the rays satisfy the defining relation with c_0 last
    rel = [sum(c * u[i] for c, u in zip((3, 5, 2), w.rays)) for i in range(2)]
    assert rel == [0, 0]


def test_product_and_bundle():
    p1 = projective_space(1)
    assert product(p1, p1).rays == ((1, 0), (-1, 0), (0, 1), (0, -1))
    h3 = proj_bundle(p1, [[0, 3]])
    assert h3.rays == ((1, 0), (-1, 3), (0, 1), (0, -1))
    assert h3.complete and h3.smooth
    assert standard_fan("proj_bundle", p1, [[0, 3]]) == h3


def test_subdivide_errors():
    p2 = projective_space(2)
    with pytest.raises(AlreadyARay):
        star_subdivision(p2, (1, 0))
    with pytest.raises(NonPrimitive):
        star_subdivision(p2, (2, 2))


def test_fan_key_ignores_order():
    a = validate_fan(2, P2_RAYS, P2_CONES)
    b = validate_fan(2, [(-1, -1), (1, 0), (0, 1)], [(1, 2), (0, 2), (0, 1)])
    assert fan_key(a) == fan_key(b)


def _naive_face_count(fan):
    faces = set()
    for cone in fan.max_cones:
        for mask in range(1 << len(cone)):
            faces.add(tuple(c for i, c in enumerate(cone) if mask >> i & 1))
    return len(faces)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_subdivision_invariants(seed, rank):
    rng = random.Random(seed)
    fan = random_fan(rng, rank)
    vecs = [v for v in box_vectors(rank) if fan.ray_index(v) is None]
    v = rng.choice(vecs)
    new, k = star_subdivision(fan, v)
    # completeness and simpliciality preserved; one more ray; every old ray kept
    assert new.complete
    assert new.rays[: fan.n_rays] == fan.rays and new.rays[k] == v
    # the subdivided fan passes the full face-intersection check
    validate_fan(new.rank, new.rays, new.max_cones)
    # each maximal cone containing v is replaced by one cone per positive coordinate
    grow = 0
    for j in range(len(fan.max_cones)):
        lam = fan.cone_coordinates(j, v)
        if all(x >= 0 for x in lam):
            grow += sum(1 for x in lam if x > 0) - 1
    assert len(new.max_cones) == len(fan.max_cones) + grow
    # strata count agrees with a naive face enumeration
    assert len(orbit_strata(new)) == _naive_face_count(new)
    # every lattice point of a small box lies in some cone of the new fan
    for w in box_vectors(rank, 1):
        assert new.locate(w) is not None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_smoothness_matches_determinants(seed, rank):
    fan = random_fan(random.Random(seed), rank)
    for cone in fan.max_cones:
        d = abs(lattice.det([fan.rays[i] for i in cone]))
        assert is_smooth_cone(fan, cone) == (d == 1)
