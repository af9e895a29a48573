"""
FIBRA - Grothendieck construction: order, J-basis, examples, induced maps, pullbacks.
"""

import pytest

from core.catalog import cone_functor, suspension_functor
from core.errors import NotOverBaseError, WeakNaturalityError
from finspace import (
    ContinuousMap,
    are_homeomorphic,
    chain,
    cone,
    empty_space,
    indiscrete,
    iter_continuous_maps,
    iter_spaces,
    open_sets,
    product,
    random_map,
    random_space,
    suspension,
)
from functorcat import (
    WeakNatTrans,
    compose_weak,
    constant_functor,
    functor_from_maps,
    identity_transformation,
    iter_weak_transformations,
    perturb_within_classes,
    random_functor,
)
from functorcat.functor import TopFunctor
from grothendieck import (
    basis_space,
    embedding,
    groth,
    hom_bijection_back,
    hom_bijection_forward,
    induced_map,
    is_over_base,
    iter_over_base_maps,
    j_basis,
    pullback_functor,
)


def test_constant_functor_gives_product(SS0, X3):
    G = groth(constant_functor(SS0, X3))
    assert G.space == product(SS0, X3)
    assert G.projection.image == tuple(k // 3 for k in range(12))


def test_f1_and_f2_give_the_product(S, X3, F1, F2):
    assert groth(F1).space == product(S, X3)
    assert groth(F2).space == product(S, X3)


def test_f3_has_exactly_five_opens(F1, F3):
    G = groth(F3)
    expected = {
        frozenset(),
        frozenset({("0", "b"), ("0", "c")}),
        frozenset({("0", "a"), ("0", "b"), ("0", "c")}),
        frozenset({("0", "a"), ("0", "b"), ("0", "c"), ("1", "b"), ("1", "c")}),
        frozenset(G.space.labels),
    }
    assert set(open_sets(G.space)) == expected
    assert len(open_sets(G.space)) == 5
    assert not are_homeomorphic(G.space, groth(F1).space)


def test_indiscrete_values_give_product(S, I2):
    swap = {"1": "2", "2": "1"}
    D = functor_from_maps(S, [I2, I2], [("0", "1", swap)])
    assert groth(D).space == product(S, I2)


def test_cone_and_suspension_functors(X3):
    assert are_homeomorphic(groth(cone_functor(X3)).space, cone(X3))
    assert are_homeomorphic(groth(suspension_functor(X3)).space, suspension(X3))


def test_empty_base():
    B = empty_space()
    G = groth(TopFunctor(B, [], {}))
    assert len(G.space) == 0


def test_j_basis_of_f3(F3):
    assert j_basis(F3, "1", ["b", "c"]) == frozenset(
        {("0", "a"), ("0", "b"), ("0", "c"), ("1", "b"), ("1", "c")}
    )
    assert j_basis(F3, "0", ["b", "c"]) == frozenset({("0", "b"), ("0", "c")})


@pytest.mark.parametrize("name", ["F1", "F2", "F3"])
def test_basis_topology_matches_order(name, request):
    D = request.getfixturevalue(name)
    assert basis_space(D) == groth(D).space


def test_basis_topology_on_random_functors(rng):
    for _ in range(40):
        B = random_space(rng, int(rng.integers(1, 5)))
        D = random_functor(rng, B, max_fiber=3)
        assert basis_space(D) == groth(D).space


def test_same_kolmogorov_arrows_same_space(rng):
    for _ in range(20):
        B = random_space(rng, int(rng.integers(1, 4)), t0=True)
        D = random_functor(rng, B, max_fiber=3)
        assert groth(perturb_within_classes(rng, D)).space == groth(D).space


def test_embedding_is_onto_the_fiber(F3, X3):
    G = groth(F3)
    iota = embedding(G, "1")
    assert iota.dom == X3
    assert [G.space.label(k) for k in iota.image] == [("1", "a"), ("1", "b"), ("1", "c")]


def test_induced_map_and_back(F1, F3):
    source, target = groth(F3), groth(F1)
    for theta in iter_weak_transformations(F3, F1):
        alpha = induced_map(theta, source, target)
        assert hom_bijection_back(alpha, source, target) == theta


def test_hom_counts_agree(F1, F2, F3):
    for C in (F1, F2, F3):
        for D in (F1, F2, F3):
            weak = list(iter_weak_transformations(C, D))
            over = list(iter_over_base_maps(groth(C), groth(D)))
            assert len(weak) == len(over)


def test_induced_map_rejects_non_weak(F3, S, X3):
    C = constant_functor(S, X3)
    const_a = ContinuousMap.constant(X3, X3, X3.index("a"))
    theta = WeakNatTrans(F3, C, (const_a, ContinuousMap.identity(X3)))
    with pytest.raises(WeakNaturalityError):
        induced_map(theta)


def test_back_rejects_maps_not_over_base(S):
    D = constant_functor(S, chain(["x"]))
    G = groth(D)
    flip = ContinuousMap(G.space, G.space, [1, 1], check=False)
    with pytest.raises(NotOverBaseError):
        hom_bijection_back(flip, G, G)


def test_pullback_square_commutes_and_factors(rng, SS0):
    D = random_functor(rng, SS0, max_fiber=2)
    X = chain(["p", "q"])
    f = ContinuousMap.from_labels(X, SS0, {"p": "a", "q": "c"})
    square = pullback_functor(D, f)
    assert square.commutes()
    # the identity leg pair factors through the square as the identity
    alpha = square.pulled.projection
    gamma = square.factor(alpha, square.g)
    assert gamma.image == tuple(range(len(square.pulled.space)))


def test_pullback_factorization_is_unique(rng):
    test_spaces = [Z for k in (1, 2, 3, 4) for Z in iter_spaces(k)]
    for _ in range(8):
        B = random_space(rng, 3, t0=True)
        D = random_functor(rng, B, max_fiber=2)
        X = random_space(rng, 2)
        f = random_map(rng, X, B)
        square = pullback_functor(D, f)
        pi = square.original.projection.image
        for Z in test_spaces:
            through = {}
            for gamma in iter_continuous_maps(Z, square.pulled.space):
                legs = (square.pulled.projection.compose(gamma).image, square.g.compose(gamma).image)
                through.setdefault(legs, []).append(gamma.image)
            alphas = list(iter_continuous_maps(Z, X))
            for beta in iter_continuous_maps(Z, square.original.space):
                for alpha in alphas:
                    if tuple(f.image[z] for z in alpha.image) != tuple(pi[z] for z in beta.image):
                        continue
                    assert through.get((alpha.image, beta.image)) == [square.factor(alpha, beta).image]


def test_indiscrete_fiber_total_space(SS0, I2):
    assert groth(constant_functor(SS0, I2)).space == product(SS0, indiscrete(["1", "2"]))


def test_forward_map_lies_over_the_base(F2, F3):
    source, target = groth(F3), groth(F2)
    for theta in iter_weak_transformations(F3, F2):
        alpha = hom_bijection_forward(theta, source, target)
        assert is_over_base(alpha, source.projection, target.projection)


def test_induced_map_respects_composition(rng):
    for _ in range(15):
        B = random_space(rng, int(rng.integers(1, 4)))
        A, C, D = (random_functor(rng, B, max_fiber=2) for _ in range(3))
        gA, gC, gD = groth(A), groth(C), groth(D)
        first = list(iter_weak_transformations(A, C))
        second = list(iter_weak_transformations(C, D))
        for psi in first[:6]:
            for theta in second[:6]:
                composite = induced_map(compose_weak(theta, psi), gA, gD)
                assert composite.image == induced_map(theta, gC, gD).compose(induced_map(psi, gA, gC)).image


def test_identity_transformation_induces_identity(F1, F2, F3):
    for D in (F1, F2, F3):
        G = groth(D)
        assert induced_map(identity_transformation(D), G, G).image == tuple(range(len(G.space)))


def test_strict_transformations_commute_with_embeddings(F1, F2, F3):
    # theta_* iota_b = iota_b theta_b holds for weak transformations too
    for C in (F1, F2, F3):
        for D in (F1, F2, F3):
            source, target = groth(C), groth(D)
            for theta in iter_weak_transformations(C, D):
                alpha = induced_map(theta, source, target)
                for b in C.base.labels:
                    left = alpha.compose(embedding(source, b)).image
                    right = embedding(target, b).compose(theta.component_at(b)).image
                    assert left == right
                squares = [
                    D.arrows[p].compose(theta.components[p[0]]).image == theta.components[p[1]].compose(a).image
                    for p, a in C.arrows.items()
                ]
                assert theta.is_strict == all(squares)
