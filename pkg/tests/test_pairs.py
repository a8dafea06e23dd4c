import random
from fractions import Fraction
from itertools import product as iproduct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import P1xP1, box_vectors, random_coeffs, random_fan, random_new_vector
from logcy import lattice
from logcy.errors import NonPrimitive, NotLC, NotLogCY
from logcy.fan import projective_space, weighted_projective
from logcy.pairs import (
    ToricPair,
    classes_equal,
    complexity,
    divisor_sections,
    full_boundary,
    index,
    is_lc,
    lc_centers,
    log_discrepancy,
    pullback_star_subdivision,
    report,
    support_value,
)

half = Fraction(1, 2)


def dual_character_discrepancy(pair, v):
    """Log discrepancy through the linear function m_sigma on a cone containing v.

    On the cone sigma, A is the linear function with <m, u_i> = 1 - b_i on its
    rays; solve for m exactly and evaluate at v.
    """
    fan = pair.fan
    for cone in fan.max_cones:
        U = [fan.rays[i] for i in cone]
        coords = lattice.solve(lattice.transpose(U), v)
        if all(x >= 0 for x in coords):
            m = lattice.solve(U, [1 - pair.coeffs[i] for i in cone])
            return sum(a * b for a, b in zip(m, v))
    raise AssertionError("vector outside the fan")


def test_full_boundary_p2():
    rep = report(full_boundary(projective_space(2)))
    assert rep.complexity == 0 and rep.index == 1 and rep.lc and rep.log_cy


def test_zero_boundary_p2():
    pair = ToricPair(projective_space(2), (0, 0, 0))
    assert complexity(pair) == 3
    with pytest.raises(NotLogCY):
        index(pair)
    assert report(pair).index is None and not report(pair).log_cy


def test_index_two_subpair():
    # K + B = -(1/2) D_0 + (1/2) D_1 on P^1 is principal after doubling
    pair = ToricPair(projective_space(1), (half, Fraction(3, 2)))
    assert index(pair) == 2
    assert not is_lc(pair)


def test_log_discrepancy_examples():
    p2 = projective_space(2)
    assert log_discrepancy(ToricPair(p2, (0, 0, 0)), (1, 1)) == 2
    assert log_discrepancy(full_boundary(p2), (1, 1)) == 0
    assert log_discrepancy(ToricPair(p2, (half, 0, 0)), (1, 0)) == half
    with pytest.raises(NonPrimitive):
        log_discrepancy(full_boundary(p2), (2, 0))


def test_lc_centers_p2():
    centers = lc_centers(full_boundary(projective_space(2)))
    assert len(centers) == 6
    assert lc_centers(ToricPair(projective_space(2), (1, 1, 0))) == [(0,), (1,), (0, 1)]
    with pytest.raises(NotLC):
        lc_centers(ToricPair(projective_space(2), (2, 0, 0)))


def test_section_counts():
    p2 = projective_space(2)
    assert divisor_sections(p2, (0, 0, 1)) == 3
    assert divisor_sections(p2, (0, 0, 2)) == 6
    assert divisor_sections(weighted_projective(1, 1, 2), (1, 0, 0)) >= 2
    assert divisor_sections(weighted_projective(1, 2, 3), (0, 0, 1)) == 1


def test_classes_equal():
    p2 = projective_space(2)
    assert classes_equal(p2, (1, 0, 0), (0, 0, 1))
    assert not classes_equal(p2, (1, 0, 0), (0, 0, 2))
    w = weighted_projective(1, 1, 2)
    # rays e_1 (weight 1), e_2 (weight 2), u_0 (weight 1): 2 D_0 ~ D_1
    assert classes_equal(w, (2, 0, 0), (0, 1, 0))
    assert classes_equal(w, (1, 0, 0), (0, half, 0), mode="rational")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_discrepancy_matches_dual_character(seed, rank):
    rng = random.Random(seed)
    fan = random_fan(rng, rank)
    pair = ToricPair(fan, random_coeffs(rng, fan.n_rays))
    for v in rng.sample(box_vectors(rank), 8):
        assert log_discrepancy(pair, v) == dual_character_discrepancy(pair, v)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.integers(2, 5))
def test_discrepancy_homogeneous(seed, rank, k):
    rng = random.Random(seed)
    fan = random_fan(rng, rank)
    pair = ToricPair(fan, random_coeffs(rng, fan.n_rays))
    v = rng.choice(box_vectors(rank))
    assert support_value(pair, tuple(k * x for x in v)) == k * log_discrepancy(pair, v)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_pullback_is_crepant(seed, rank):
    rng = random.Random(seed)
    fan = random_fan(rng, rank)
    pair = ToricPair(fan, random_coeffs(rng, fan.n_rays))
    v = random_new_vector(rng, fan)
    a = log_discrepancy(pair, v)
    up = pullback_star_subdivision(pair, v)
    assert up.coeffs[:-1] == pair.coeffs and up.coeffs[-1] == 1 - a
    # extracting a divisor raises the complexity by its log discrepancy
    assert complexity(up) == complexity(pair) + a
    # and the pullback does not change any valuation's log discrepancy
    for w in rng.sample(box_vectors(rank), 6):
        assert log_discrepancy(up, w) == log_discrepancy(pair, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_lc_matches_sampling_oracle(seed):
    rng = random.Random(seed)
    coeffs = tuple(Fraction(rng.randint(0, 8), 4) for _ in range(4))
    pair = ToricPair(P1xP1, coeffs)
    sampled = min(log_discrepancy(pair, v) for v in box_vectors(2, 3)) >= 0
    assert is_lc(pair) == sampled


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_lc_centers_brute_force(seed, rank):
    rng = random.Random(seed)
    fan = random_fan(rng, rank)
    pair = ToricPair(fan, tuple(rng.choice([0, half, 1, 1]) for _ in range(fan.n_rays)))
    # a cone is an lc center iff the valuation of its barycenter has log discrepancy 0
    expected = [
        c
        for c in fan.cones
        if c
        and support_value(pair, [sum(fan.rays[i][j] for i in c) for j in range(rank)]) == 0
    ]
    assert lc_centers(pair) == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_sections_match_box_count(seed):
    rng = random.Random(seed)
    fan = random_fan(rng, 2, blowups=1)
    d = [rng.randint(0, 2) for _ in range(fan.n_rays)]
    brute = sum(
        1
        for m in iproduct(range(-12, 13), repeat=2)
        if all(m[0] * u[0] + m[1] * u[1] >= -dr for u, dr in zip(fan.rays, d))
    )
    assert divisor_sections(fan, d) == brute


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_full_boundary_is_log_cy_index_one(seed, rank):
    fan = random_fan(random.Random(seed), rank)
    rep = report(full_boundary(fan))
    assert rep.complexity == 0 and rep.index == 1 and rep.log_cy
