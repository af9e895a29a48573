"""
FIBRA - Fiber bundles: verification, characterization, canonical representation, iso, classify, pullback.
"""

import pytest

from bundles import (
    bundle_iso,
    canonical_iso_witness,
    canonical_representation,
    characterization_check,
    characterize,
    classify,
    delta,
    grothendieck_bundle,
    make_bundle,
    over_base_isomorphism,
    pullback_bundle,
    trivial_automorphisms,
    trivial_bundle,
    verify_bundle,
    with_witnesses,
)
from core.budget import SearchBudget
from core.catalog import example, example_role
from core.errors import (
    BaseShapeError,
    BundleMismatchError,
    ClassificationInconclusive,
    InvalidObjectError,
    UnverifiedBundleError,
)
from core.properties import run_properties
from finspace import ContinuousMap, chain, discrete, iter_spaces, random_space
from functorcat import aut_group, functor_from_maps, is_weak_nat_trans, natural_iso, random_group_functor
from grothendieck import groth, hom_bijection_back, induced_map
from grothendieck.over import find_over_homeomorphism, iter_over_maps


def test_trivial_bundle_is_verified(SS0, X3):
    bundle = trivial_bundle(SS0, X3)
    assert bundle.verified
    assert len(bundle.total) == 12
    assert verify_bundle(bundle.map, X3) is not None


def test_f2_projection_is_a_bundle_f3_is_not(F2, F3, X3):
    assert verify_bundle(groth(F2).projection, X3) is not None
    assert verify_bundle(groth(F3).projection, X3) is None


def test_wrong_fiber_size_is_not_a_bundle(SS0, X3, S):
    assert verify_bundle(trivial_bundle(SS0, X3).map, S) is None


def test_characterization_of_f_functors(F1, F2, F3, X3):
    assert characterize(F1, X3).holds
    assert characterize(F2, X3).holds
    report = characterize(F3, X3)
    assert not report.classes_invertible
    assert not report.holds
    assert report.problems


def test_characterization_reports_fiber_mismatch(S, X3, pt):
    D = functor_from_maps(S, [X3, pt], [("0", "1", {"a": "*", "b": "*", "c": "*"})])
    report = characterize(D, X3)
    assert not report.fibers_match


def test_characterization_agrees_with_verification():
    result = run_properties(trials=40, seed=7, max_base=4, max_fiber=3)
    assert result.ok
    assert result.bundles_seen > 0


def test_grothendieck_bundle_of_non_bundle_functor_fails(F3, X3):
    with pytest.raises(UnverifiedBundleError):
        grothendieck_bundle(F3, X3)


def test_with_witnesses_verifies_candidates(F2, X3):
    candidate = make_bundle(groth(F2).projection, X3)
    assert not candidate.verified
    assert with_witnesses(candidate).verified


def test_canonical_representation_recovers_the_functor():
    entry = example("ss0")
    bundle, D = entry["bundle"], entry["functor"]
    rep = canonical_representation(bundle)
    assert natural_iso(rep.functor, D) is not None
    assert canonical_iso_witness(bundle, rep) is not None


def test_canonical_representation_with_non_t0_fiber(F2, X3):
    bundle = grothendieck_bundle(F2, X3)
    rep = canonical_representation(bundle)
    assert canonical_iso_witness(bundle, rep) is not None


def test_delta_needs_comparable_points():
    bundle = example_role("ss0", "bundle")
    B = bundle.base
    assert delta(bundle, B.index("a"), B.index("c")).is_homeomorphism
    with pytest.raises(InvalidObjectError):
        delta(bundle, B.index("c"), B.index("d"))


def test_canonical_representation_needs_witnesses(F2, X3):
    with pytest.raises(UnverifiedBundleError):
        canonical_representation(make_bundle(groth(F2).projection, X3))


def test_ss0_bundles_are_not_isomorphic():
    entry = example("ss0")
    assert bundle_iso(entry["bundle"], entry["other"]) is None
    h = bundle_iso(entry["bundle"], entry["bundle"])
    assert h is not None and h.is_homeomorphism


def test_indiscrete_fiber_bundles_are_isomorphic():
    entry = example("indiscrete-fiber")
    # D_1 and D_2 are not naturally isomorphic, but their bundles are
    assert natural_iso(entry["d1"], entry["d2"]) is None
    h = bundle_iso(entry["bundle"], entry["other"])
    assert h is not None
    assert entry["other"].map.compose(h).image == entry["bundle"].map.image


def test_bundle_iso_rejects_mismatches(S, SS0, X3):
    with pytest.raises(BundleMismatchError):
        bundle_iso(trivial_bundle(S, X3), trivial_bundle(SS0, X3))
    with pytest.raises(BundleMismatchError):
        bundle_iso(trivial_bundle(S, X3), trivial_bundle(S, S))
    with pytest.raises(UnverifiedBundleError):
        bundle_iso(make_bundle(trivial_bundle(S, X3).map, X3), trivial_bundle(S, X3))


def test_classify_sierpinski_over_itself(S):
    table = classify(S, S)
    assert len(table) == 1
    assert table.total_functors == 1


def test_classify_ss0_over_ss0(SS0):
    table = classify(SS0, SS0)
    assert len(table) == 4
    assert table.total_functors == 256
    assert sum(c.size for c in table.classes) == 256
    assert all(c.size == 64 for c in table.classes)
    assert all(len(c.bundle.total) == 16 for c in table.classes)


def test_classify_merges_classes_for_indiscrete_fiber(SS0, I2):
    table = classify(SS0, I2)
    assert len(table) == 1
    assert table.classes[0].functor_classes == 2
    assert table.classes[0].size == 16


def test_classify_budget_is_inconclusive(SS0):
    with pytest.raises(ClassificationInconclusive) as exc:
        classify(SS0, SS0, SearchBudget(3))
    assert exc.value.partial is not None
    assert exc.value.partial.inconclusive


def test_trivial_automorphisms_with_t0_fiber(S):
    reports = trivial_automorphisms(S, S)
    assert len(reports) == 1
    assert all(r.product_form for r in reports)


def test_trivial_automorphisms_with_indiscrete_fiber(S, I2):
    reports = trivial_automorphisms(S, I2)
    assert len(reports) == 4
    assert sum(r.product_form for r in reports) == 2
    assert all(r.same_on_classes and r.square_on_classes for r in reports)


@pytest.mark.parametrize("base", [discrete(["x", "y"]), chain(["0", "1", "2"])])
def test_trivial_automorphisms_need_two_chain(base, S):
    with pytest.raises(BaseShapeError):
        trivial_automorphisms(base, S)


def test_non_surjective_projection_is_no_grothendieck_projection(S, pt):
    p = example_role("non-surjective-E", "projection")
    assert verify_bundle(p, pt) is None
    for Y in iter_spaces(2):
        for y in Y.labels:
            D = functor_from_maps(S, [pt, Y], [("0", "1", {"*": y})])
            assert find_over_homeomorphism(p, groth(D).projection) is None


def test_pullback_along_identity_is_isomorphic():
    bundle = example_role("ss0", "bundle")
    pulled = pullback_bundle(bundle, ContinuousMap.identity(bundle.base))
    assert pulled.verified
    assert bundle_iso(pulled, bundle) is not None


def test_comparable_maps_give_isomorphic_pullbacks(S):
    bundle = example_role("ss0", "bundle")
    B = bundle.base
    f = ContinuousMap.from_labels(S, B, {"0": "a", "1": "c"})
    g = ContinuousMap.from_labels(S, B, {"0": "c", "1": "c"})
    assert bundle_iso(pullback_bundle(bundle, f), pullback_bundle(bundle, g)) is not None


def test_characterization_check_on_examples(F2, F3, X3):
    assert characterization_check(F2, X3)
    assert not characterization_check(F3, X3)


def test_max_map_is_weak_but_not_natural(S):
    bundle = trivial_bundle(S, S)
    rep = canonical_representation(bundle).functor
    # D_p(0 <= 1) = c_1 x Id
    assert rep.arrow_at("0", "1").image == (0, 1)
    G = groth(rep)
    image = []
    for k in range(len(G.space)):
        b, x = G.tag(k)
        image.append(G.point(b, max(b, x)))
    alpha = ContinuousMap(G.space, G.space, image)
    theta = hom_bijection_back(alpha, G, G)
    assert [t.image for t in theta.components] == [(0, 1), (1, 1)]
    assert is_weak_nat_trans(theta, rep, rep)
    assert not theta.is_strict
    assert induced_map(theta, G, G).image == alpha.image


def test_canonical_representation_ignores_fiber_labels(rng):
    for _ in range(15):
        F = random_space(rng, int(rng.integers(1, 4)), t0=True)
        B = random_space(rng, int(rng.integers(1, 4)))
        p = groth(random_group_functor(rng, B, aut_group(F))).projection
        renamed = F.relabel({lab: f"{lab}'" for lab in F.labels})
        first = canonical_representation(verify_bundle(p, F)).functor
        second = canonical_representation(verify_bundle(p, renamed)).functor
        assert {k: a.image for k, a in first.arrows.items()} == {k: a.image for k, a in second.arrows.items()}
        assert natural_iso(first, second) is not None


def _witness_independent_transport(bundle):
    B = bundle.base
    for b2 in range(len(B)):
        chart = bundle.chart(b2)
        for phi in iter_over_maps(chart.local_map, chart.trivial_map, bijective=True):
            for b in B.down_sets[b2]:
                assert delta(bundle, b, b2, phi).image == delta(bundle, b, b2).image


def test_delta_does_not_depend_on_the_trivialization(rng):
    _witness_independent_transport(example_role("ss0", "bundle"))
    for _ in range(10):
        F = random_space(rng, int(rng.integers(1, 4)), t0=True)
        B = random_space(rng, int(rng.integers(1, 4)))
        _witness_independent_transport(grothendieck_bundle(random_group_functor(rng, B, aut_group(F)), F))


def test_bundle_iso_agrees_with_direct_search(rng):
    for _ in range(25):
        F = random_space(rng, int(rng.integers(1, 4)), t0=True)
        B = random_space(rng, int(rng.integers(1, 4)))
        G = aut_group(F)
        p = grothendieck_bundle(random_group_functor(rng, B, G), F)
        q = grothendieck_bundle(random_group_functor(rng, B, G), F)
        h = bundle_iso(p, q)
        direct = over_base_isomorphism(p, q)
        assert (h is None) == (direct is None)
        for found in (h, direct):
            if found is not None:
                assert found.is_homeomorphism
                assert q.map.compose(found).image == p.map.image


@pytest.mark.parametrize("n", [1, 2, 3])
def test_classify_over_a_point_has_one_class(pt, n):
    for F in iter_spaces(n):
        table = classify(pt, F)
        assert len(table) == 1
        assert table.total_functors == 1
