"""
FIBRA - Functors, Aut(F), enumeration up to gauge, weak and natural transformations.
"""

import math
from itertools import product as cartesian

import pytest

from core.catalog import automorphism, g_alpha
from core.errors import FunctorError, WeakNaturalityError
from finspace import (
    ContinuousMap,
    chain,
    discrete,
    iter_continuous_maps,
    iter_spaces,
    open_sets,
    product,
    random_space,
)
from functorcat import (
    aut_group,
    assignment_of,
    compose_weak,
    constant_functor,
    enumerate_functors_to_aut,
    functor_from_maps,
    functor_violations,
    gauge_multiplier,
    identity_transformation,
    is_morphism_inverting,
    is_weak_nat_trans,
    iter_weak_transformations,
    map_preceq,
    natural_iso,
    perturb_within_classes,
    random_functor,
    random_group_functor,
    regauge,
    require_functor,
    spanning_edges,
    validate_functor,
    weak_transformation,
)
from functorcat.enumerate import functor_from_assignment
from finspace.kolmogorov import kolmogorov_map


def _broken_chain_functor():
    B = chain(["0", "1", "2"])
    X = discrete(["x", "y"])
    ident = {"x": "x", "y": "y"}
    swap = {"x": "y", "y": "x"}
    return functor_from_maps(B, [X, X, X], [("0", "1", ident), ("1", "2", ident), ("0", "2", swap)])


def test_broken_composition_names_the_chain():
    D = _broken_chain_functor()
    problems = functor_violations(D)
    assert "D(1 <= 2) o D(0 <= 1) != D(0 <= 2) on chain 0 <= 1 <= 2" in problems
    with pytest.raises(FunctorError) as exc:
        require_functor(D)
    assert exc.value.violations == problems


def test_from_generators_derives_composites():
    B = chain(["0", "1", "2"])
    X = discrete(["x", "y"])
    swap = {"x": "y", "y": "x"}
    D = functor_from_maps(B, [X, X, X], [("0", "1", swap), ("1", "2", swap)])
    assert D.arrow_at("0", "2").image == (0, 1)
    assert not functor_violations(D)


def test_morphism_inverting(F1, F2, F3):
    assert is_morphism_inverting(F1)
    assert not is_morphism_inverting(F2)
    assert not is_morphism_inverting(F3)


def test_aut_groups(SS0, I2, X3, aut_ss0):
    assert len(aut_ss0) == 4
    assert len(aut_group(I2)) == 2
    assert len(aut_group(X3)) == 2
    tau_ab = automorphism(aut_ss0, {"a": "b", "b": "a", "c": "c", "d": "d"})
    assert aut_ss0.mul(tau_ab, tau_ab) == aut_ss0.identity
    assert aut_ss0.inverse[tau_ab] == tau_ab


def test_functor_counts_into_aut(S, SS0, aut_ss0):
    assert len(enumerate_functors_to_aut(S, aut_ss0)) == 4
    assert len(enumerate_functors_to_aut(SS0, aut_ss0)) == 256


def test_gauge_fixed_counts(SS0, aut_ss0, I2):
    fixed = enumerate_functors_to_aut(SS0, aut_ss0, gauge_fixed=True)
    assert len(fixed) == 4
    assert len(fixed) * gauge_multiplier(SS0, aut_ss0) == 256
    G = aut_group(I2)
    assert len(enumerate_functors_to_aut(I2, G)) == 2
    assert len(enumerate_functors_to_aut(I2, G, gauge_fixed=True)) * gauge_multiplier(I2, G) == 2


def test_spanning_tree_leaves_b_d_free(SS0):
    assert spanning_edges(SS0) == {(0, 2), (0, 3), (1, 2)}


def test_g_alpha_functors_are_pairwise_non_isomorphic(SS0, aut_ss0):
    functors = [g_alpha(SS0, aut_ss0, a) for a in range(len(aut_ss0))]
    for i, C in enumerate(functors):
        for j, D in enumerate(functors):
            assert (natural_iso(C, D) is not None) == (i == j)


def test_regauged_functor_is_naturally_isomorphic(SS0, aut_ss0):
    D = g_alpha(SS0, aut_ss0, 1)
    table = regauge(SS0, aut_ss0, assignment_of(D, aut_ss0), [3, 2, 1, 0])
    E = functor_from_assignment(SS0, aut_ss0, table)
    theta = natural_iso(D, E)
    assert theta is not None
    assert theta.is_isomorphism


def test_indiscrete_fiber_functors_not_isomorphic(SS0, I2):
    G = aut_group(I2)
    swap = automorphism(G, {"1": "2", "2": "1"})
    D1, D2 = g_alpha(SS0, G, G.identity), g_alpha(SS0, G, swap)
    assert natural_iso(D1, D2) is None


def test_natural_iso_needs_matching_sizes(S, X3):
    assert natural_iso(constant_functor(S, X3), constant_functor(S, chain(["p", "q", "r"]))) is None


def test_map_preceq_is_pointwise(S):
    low = ContinuousMap.constant(S, S, 0)
    ident = ContinuousMap.identity(S)
    assert map_preceq(low, ident)
    assert not map_preceq(ident, low)


def test_weak_transformation_validation(F3, X3):
    ident = ContinuousMap.identity(X3)
    # F3(0<=1) id = const b, which is ⪯ id o F3(0<=1) = const b
    theta = weak_transformation([ident, ident], F3, F3)
    assert theta.is_strict
    const_a = ContinuousMap.constant(X3, X3, X3.index("a"))
    # F3(0<=1) o const_a = const b ⪯ const_a o F3(0<=1) = const a holds since b <= a
    assert is_weak_nat_trans([const_a, const_a], F3, F3)
    # const a is not ⪯ const b
    with pytest.raises(WeakNaturalityError):
        weak_transformation([const_a, ident], F3, constant_functor(F3.base, X3))


def test_identity_and_composition(F2):
    ident = identity_transformation(F2)
    assert compose_weak(ident, ident) == ident
    assert is_weak_nat_trans(ident, F2, F2)


def test_weak_transformations_of_sierpinski_constant(S):
    C = constant_functor(S, S)
    # components (t0, t1) with t0 ⪯ t1 pointwise, both monotone self-maps of S
    assert len(list(iter_weak_transformations(C, C))) == 6


def test_random_functors_are_functors(rng):
    for _ in range(25):
        B = random_space(rng, int(rng.integers(1, 5)))
        D = random_functor(rng, B, max_fiber=3)
        assert not functor_violations(D)


def test_random_group_functor(rng, SS0, aut_ss0):
    D = random_group_functor(rng, SS0, aut_ss0)
    assert is_morphism_inverting(D)
    assert not functor_violations(D)


def test_perturbation_keeps_classes(rng, S, X3):
    D = constant_functor(S, X3)
    E = perturb_within_classes(rng, D)
    for p, a in D.arrows.items():
        assert kolmogorov_map(E.arrows[p]).image == kolmogorov_map(a).image


def test_product_fiber_automorphisms(S):
    # the coordinate swap of the 2x2 grid
    assert len(aut_group(product(S, S))) == 2


def test_validate_functor(F3):
    assert validate_functor(F3)
    assert not validate_functor(_broken_chain_functor())


def test_component_at_uses_base_labels(F2):
    theta = identity_transformation(F2)
    assert theta.component_at("1") == theta.components[1]


def _functors_by_brute_force(B, G):
    """Every assignment of group elements to comparable pairs that respects composition."""
    pairs = [p for p in B.relation_pairs if p[0] != p[1]]
    chains = [(i, j, k) for i, j in B.relation_pairs for j2, k in B.relation_pairs if j == j2]
    found = set()
    for pick in cartesian(range(len(G)), repeat=len(pairs)):
        table = {(i, i): G.identity for i in range(len(B))}
        table.update(zip(pairs, pick))
        if all(G.mul(table[(j, k)], table[(i, j)]) == table[(i, k)] for i, j, k in chains):
            found.add(tuple(sorted(table.items())))
    return found


def _enumerated(B, G):
    return {tuple(sorted(assignment_of(D, G).items())) for D in enumerate_functors_to_aut(B, G)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_brute_force_on_small_bases(n):
    G = aut_group(discrete(["x", "y"]))
    for B in iter_spaces(n):
        assert _enumerated(B, G) == _functors_by_brute_force(B, G)


def test_enumeration_matches_brute_force_on_five_point_bases(rng):
    G = aut_group(discrete(["x", "y"]))
    for _ in range(10):
        B = random_space(rng, 5, t0=True)
        assert _enumerated(B, G) == _functors_by_brute_force(B, G)


def test_enumeration_matches_brute_force_for_non_abelian_group():
    G = aut_group(discrete(["x", "y", "z"]))
    for n in (1, 2, 3):
        for B in iter_spaces(n):
            if len(B.relation_pairs) - len(B) <= 4:
                assert _enumerated(B, G) == _functors_by_brute_force(B, G)


def test_map_preceq_matches_preimages_of_opens(rng):
    for _ in range(10):
        X = random_space(rng, int(rng.integers(1, 5)))
        Y = random_space(rng, int(rng.integers(1, 5)))
        opens = [frozenset(Y.index(y) for y in V) for V in open_sets(Y)]
        maps = list(iter_continuous_maps(X, Y))
        preimages = [[f.preimage(V) for V in opens] for f in maps]
        for f, pf in zip(maps, preimages):
            for g, pg in zip(maps, preimages):
                literal = all(v <= u for u, v in zip(pf, pg))
                assert map_preceq(f, g) == literal


def test_mutually_preceding_maps_agree_on_classes(rng):
    for _ in range(10):
        X = random_space(rng, int(rng.integers(1, 5)))
        Y = random_space(rng, int(rng.integers(1, 5)))
        maps = list(iter_continuous_maps(X, Y))
        for f in maps:
            for g in maps:
                if map_preceq(f, g) and map_preceq(g, f):
                    assert kolmogorov_map(f).image == kolmogorov_map(g).image


def test_strict_means_both_ways_on_t0_values(rng):
    for _ in range(20):
        B = random_space(rng, int(rng.integers(1, 4)))
        C = random_functor(rng, B, max_fiber=2, t0_fibers=True)
        D = random_functor(rng, B, max_fiber=2, t0_fibers=True)
        for theta in iter_weak_transformations(C, D):
            both_ways = all(
                map_preceq(theta.components[j].compose(a), D.arrows[(i, j)].compose(theta.components[i]))
                for (i, j), a in C.arrows.items()
            )
            assert theta.is_strict == both_ways


def test_strict_transformations_compose_strictly(F1, F2):
    for C in (F1, F2):
        strict = [t for t in iter_weak_transformations(C, C) if t.is_strict]
        for theta in strict:
            for psi in strict:
                assert compose_weak(theta, psi).is_strict


def test_natural_iso_is_an_equivalence(rng, SS0):
    G = aut_group(discrete(["x", "y"]))
    functors = enumerate_functors_to_aut(SS0, G)
    functors += [random_functor(rng, SS0, fiber=discrete(["x", "y"])) for _ in range(4)]
    related = {}
    for a, C in enumerate(functors):
        for b, D in enumerate(functors):
            theta = natural_iso(C, D)
            related[(a, b)] = theta is not None
            if theta is not None:
                assert theta.source == C and theta.target == D
                assert theta.is_isomorphism
                assert is_weak_nat_trans(theta, C, D)
    size = len(functors)
    for a in range(size):
        assert related[(a, a)]
        for b in range(size):
            assert related[(a, b)] == related[(b, a)]
            for c in range(size):
                if related[(a, b)] and related[(b, c)]:
                    assert related[(a, c)]


def test_aut_group_is_closed_under_composition(SS0, X3, I2):
    for F in (SS0, X3, I2, product(chain(["0", "1"]), discrete(["x", "y"]))):
        G = aut_group(F)
        images = {h.image for h in G.elements}
        assert G.elements[G.identity].image == tuple(range(len(F)))
        for a, ha in enumerate(G.elements):
            assert G.mul(a, G.inverse[a]) == G.identity
            for b, hb in enumerate(G.elements):
                composite = ha.compose(hb)
                assert composite.is_homeomorphism
                assert composite.image in images
                assert composite.image == G.elements[G.mul(a, b)].image


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_discrete_automorphisms_are_permutations(n):
    assert len(aut_group(discrete([f"p{k}" for k in range(n)]))) == math.factorial(n)
