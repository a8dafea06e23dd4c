"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact equalities of integers and Fractions.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import random
from fractions import Fraction

import pytest

from corpus import (
    P1,
    P1xP1,
    lambda2_oracle,
    random_bundle,
    random_coeffs,
    random_fan,
    random_lc_pair,
    random_new_vector,
    random_tower_spec,
)
from logcy.arrangement import (
    associated_triangles,
    check_pair,
    decompose,
    lambda_invariants,
    six_line_arrangement,
)
from logcy.bott import NotATower, build_bott_tower, build_index_example, recognize_bott_tower
from logcy.errors import Infeasible
from logcy.fan import product, proj_bundle, projective_space, weighted_projective
from logcy.fibration import (
    FanMorphism,
    cbf_pushforward,
    extract_line_bundles,
    fiber_type,
    projection,
    rebuild_bundle,
    split_fan,
    sum_decomposition_holds,
)
from logcy.pairs import (
    ToricPair,
    complexity,
    divisor_sections,
    full_boundary,
    log_discrepancy,
    pullback_star_subdivision,
    report,
)

half = Fraction(1, 2)
L456 = (3, 4, 5)  # the triangle {L4, L5, L6}, zero-based


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, summary):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {summary}")
        assert ok, summary

    return emit


def test_c01_six_line_lambda_values(verdict):
    r = lambda_invariants(six_line_arrangement(), L456)
    verdict(
        1,
        r.lambda1 == half and r.lambda2 == 0,
        f"lambda1 = {r.lambda1} (want 1/2), lambda2 = {r.lambda2} (want 0)",
    )


def test_c02_six_line_pair_report(verdict):
    rep = check_pair(six_line_arrangement())
    verdict(
        2,
        rep.lc is True and rep.log_cy is True and rep.complexity == 0,
        f"lc = {rep.lc}, log_cy = {rep.log_cy}, complexity = {rep.complexity}",
    )


def test_c03_decomposition(verdict):
    pair = six_line_arrangement()
    parts = decompose(pair)
    total = sum(w for _, w in parts)
    rebuilt = tuple(sum(w for t, w in parts if i in t) for i in range(6))
    try:
        decompose(pair, require=[L456])
        forced = "feasible"
    except Infeasible:
        forced = "Infeasible"
    verdict(
        3,
        total == 1 and rebuilt == pair.coeffs and forced == "Infeasible",
        f"weights sum to {total}, reconstruction exact = {rebuilt == pair.coeffs}, "
        f"forcing {{L4,L5,L6}} -> {forced}",
    )


def test_c04_crepancy_identity_as_stated(verdict):
    """complexity(pullback) + log_discrepancy == complexity(original), as written.

    Extracting a divisor of log discrepancy a raises the complexity by a, so
    the stated identity only holds when a == 0. The correct-sign identity is
    checked alongside and reported; the criterion itself is not weakened.
    """
    rng = random.Random(4)
    stated = correct = 0
    for k in range(200):
        rank = 2 + k % 2
        fan = random_fan(rng, rank)
        pair = ToricPair(fan, random_coeffs(rng, fan.n_rays))
        v = random_new_vector(rng, fan)
        a = log_discrepancy(pair, v)
        up = pullback_star_subdivision(pair, v)
        stated += complexity(up) + a == complexity(pair)
        correct += complexity(up) == complexity(pair) + a
    verdict(
        4,
        stated == 200,
        f"stated identity holds on {stated}/200 triples; "
        f"c(pullback) = c(original) + a holds on {correct}/200",
    )


def _corpus_smooth_fans():
    fans = [projective_space(n) for n in range(1, 6)]
    fans += [product(P1, P1), product(P1, projective_space(2)), product(P1xP1, P1)]
    fans += [product(projective_space(2), projective_space(2)), product(projective_space(2), projective_space(3))]
    rng = random.Random(5)
    fans += [build_bott_tower(random_tower_spec(rng)).fans[-1] for _ in range(20)]
    return fans


def test_c05_toric_baseline(verdict):
    fans = _corpus_smooth_fans()
    bad = []
    for fan in fans:
        assert fan.complete and fan.smooth
        rep = report(full_boundary(fan))
        if not (rep.complexity == 0 and rep.index == 1):
            bad.append(fan.rays)
    verdict(5, not bad, f"{len(fans) - len(bad)}/{len(fans)} fans give complexity 0, index 1")


def test_c06_index_family(verdict):
    bad = []
    grid = [(d, n, m) for d in (1, 2, 3) for n in (2, 3) for m in (3, 4, 5)]
    for d, n, m in grid:
        rep = report(build_index_example(d, n, m)[1])
        if not (rep.complexity == 0 and rep.index == m):
            bad.append(((d, n, m), rep.complexity, rep.index))
    verdict(
        6,
        not bad,
        f"{len(grid) - len(bad)}/{len(grid)} grid points give complexity 0 and index m"
        + (f"; failures {bad}" if bad else ""),
    )


def _bundle_morphisms(rng, count):
    towers = [build_bott_tower(random_tower_spec(rng, max_total=3)).fans[-1] for _ in range(3)]
    bases = [P1, projective_space(2), P1xP1] + towers
    out = []
    for _ in range(count):
        base, twists = random_bundle(rng, bases=bases)
        out.append(projection(proj_bundle(base, twists), base, range(base.rank)))
    return out


def test_c07_splitting(verdict):
    ok = 0
    for f in _bundle_morphisms(random.Random(7), 50):
        s = split_fan(f)
        lifted = set(s.lift_map.values())
        partition = (
            len(lifted) == f.target.n_rays
            and lifted.isdisjoint(s.fiber_rays)
            and lifted | set(s.fiber_rays) == set(range(f.source.n_rays))
        )
        ok += partition and sum_decomposition_holds(f, s)
    verdict(7, ok == 50, f"{ok}/50 bundle fans split as fiber + section cones")


def test_c08_bundle_round_trip(verdict):
    rng = random.Random(8)
    ok = 0
    for _ in range(50):
        base, twists = random_bundle(rng)
        f = projection(proj_bundle(base, twists), base, range(base.rank))
        e = extract_line_bundles(f, split_fan(f))
        same_twists = [list(t) for t in e.bundle_twists()] == twists
        ok += same_twists and rebuild_bundle(f, e) == f.source
    verdict(8, ok == 50, f"{ok}/50 specs reproduce twists and the source fan")


def test_c09_weighted_fibers(verdict):
    got = []
    for w in [(1, 1), (1, 1, 1), (1, 2, 3), (1, 1, 2)]:
        fiber = weighted_projective(*w)
        f = projection(product(P1, fiber), P1, [0])
        got.append(fiber_type(f, split_fan(f)).weights)
    want = [(1, 1), (1, 1, 1), (1, 2, 3), (1, 1, 2)]
    verdict(9, got == want, f"weights {got}")


def test_c10_section_counts(verdict):
    a = divisor_sections(projective_space(2), (0, 0, 1))
    # rays of P(1,1,2) are e_1 (weight 1), e_2 (weight 2), u_0 (weight 1)
    b = divisor_sections(weighted_projective(1, 1, 2), (1, 0, 0))
    # rays of P(1,2,3) are e_1, e_2, u_0 with u_0 the c_0 = 1 ray
    c = divisor_sections(weighted_projective(1, 2, 3), (0, 0, 1))
    verdict(10, a == 3 and b >= 2 and c == 1, f"h0 = {a}, {b}, {c} (want 3, >=2, 1)")


def test_c11_cbf(verdict):
    rng = random.Random(11)
    morphisms = _bundle_morphisms(rng, 30)
    morphisms += [projection(product(P1, weighted_projective(1, 2, 3)), P1, [0])]
    morphisms += [projection(product(weighted_projective(1, 1, 2), P1), weighted_projective(1, 1, 2), [0, 1])]
    full = cz = 0
    for f in morphisms:
        out = cbf_pushforward(full_boundary(f.source), f)
        full += out.coeffs == (1,) * f.target.n_rays
        assert complexity(full_boundary(f.source)) == 0
        cz += complexity(out) == 0
    doubling = cbf_pushforward(ToricPair(P1, (0, 0)), FanMorphism(P1, P1, [[2]])).coeffs
    n = len(morphisms)
    verdict(
        11,
        full == n and cz == n and doubling == (half, half),
        f"full boundary preserved {full}/{n}, complexity 0 kept {cz}/{n}, "
        f"doubling gives ({', '.join(map(str, doubling))})",
    )


def test_c12_lambda2_oracle(verdict):
    rng = random.Random(12)
    ok = 0
    for _ in range(100):
        pair = random_lc_pair(rng, max_lines=8)
        tri = rng.choice(associated_triangles(pair))
        ok += lambda_invariants(pair, tri).lambda2 == lambda2_oracle(pair, tri)
    verdict(12, ok == 100, f"closed form equals sampling oracle on {ok}/100 arrangements")


def test_c13_bott_recognition(verdict):
    rng = random.Random(13)
    ok = 0
    for _ in range(30):
        spec = random_tower_spec(rng, max_total=5)
        rep = build_bott_tower(spec)
        found = recognize_bott_tower(rep.fans[-1])
        ok += bool(found) and found.stage_dims == rep.stage_dims
    wp = recognize_bott_tower(weighted_projective(1, 1, 2))
    verdict(
        13,
        ok == 30 and isinstance(wp, NotATower),
        f"{ok}/30 towers recognized with matching stage_dims; P(1,1,2) -> {type(wp).__name__}",
    )

