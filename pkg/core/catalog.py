"""
FIBRA - Built-in examples.
Each entry maps role names (base, fiber, functor, bundle, ...) to domain objects.
"""

from typing import Any, Callable, Dict, List

from loguru import logger

from core.errors import InvalidObjectError
from finspace.space import ContinuousMap, FinSpace, chain, from_relations, indiscrete
from functorcat.aut import AutGroup, aut_group
from functorcat.functor import TopFunctor, constant_functor, functor_from_maps
from functorcat.enumerate import functor_into_group
from grothendieck.construction import groth
from bundles.bundle import grothendieck_bundle, trivial_bundle

POINT = "*"


def sierpinski() -> FinSpace:
    """0 < 1 with {0} open."""
    return chain(["0", "1"])


def ss0() -> FinSpace:
    """Non-Hausdorff suspension of S^0: minimal a, b below maximal c, d."""
    return from_relations(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def three_point_x() -> FinSpace:
    """{a, b, c} with opens {}, {b, c}, X: b and c indistinguishable, both below a."""
    return from_relations(["a", "b", "c"], [("b", "c"), ("c", "b"), ("b", "a")])


def point() -> FinSpace:
    return chain([POINT])


def f_functor(j: int) -> TopFunctor:
    """F_j on the Sierpinski space with F_j(0) = F_j(1) = X and F_j(0 <= 1) = f_j."""
    X = three_point_x()
    arrows = {
        1: {"a": "a", "b": "b", "c": "c"},
        2: {"a": "a", "b": "b", "c": "b"},
        3: {"a": "b", "b": "b", "c": "b"},
    }
    return functor_from_maps(sierpinski(), [X, X], [("0", "1", arrows[j])])


def cone_functor(X: FinSpace) -> TopFunctor:
    """D(0) = X, D(1) = point; its Grothendieck space is the cone of X."""
    P = point()
    return TopFunctor.from_generators(sierpinski(), [X, P], {(0, 1): ContinuousMap.constant(X, P, 0)})


def suspension_base() -> FinSpace:
    return from_relations(["a", "b", "c"], [("a", "b"), ("a", "c")])


def suspension_functor(X: FinSpace) -> TopFunctor:
    """D(a) = X, D(b) = D(c) = point; its Grothendieck space is the suspension of X."""
    B, P = suspension_base(), point()
    to_point = ContinuousMap.constant(X, P, 0)
    return TopFunctor.from_generators(B, [X, P, P], {(0, 1): to_point, (0, 2): to_point})


def automorphism(G: AutGroup, mapping: Dict[str, str]) -> int:
    F = G.space
    return G.index_of(ContinuousMap.from_labels(F, F, mapping))


def g_alpha(B: FinSpace, G: AutGroup, alpha: int, free_edge=("b", "d")) -> TopFunctor:
    """Functor B -> Aut(F) with identities on every covering pair except `free_edge`."""
    edges = {(B.label(i), B.label(j)): G.identity for i, j in B.hasse_edges}
    edges[free_edge] = alpha
    return functor_into_group(B, G, edges)


def _sierpinski() -> Dict[str, Any]:
    S = sierpinski()
    C = constant_functor(S, S)
    return {
        "space": S,
        "base": S,
        "fiber": S,
        "functor": C,
        "bundle": trivial_bundle(S, S),
        "other": grothendieck_bundle(C, S),
        "map": ContinuousMap.identity(S),
        "projection": trivial_bundle(S, S).map,
    }


def _ss0() -> Dict[str, Any]:
    S = ss0()
    G = aut_group(S)
    tau_ab = automorphism(G, {"a": "b", "b": "a", "c": "c", "d": "d"})
    tau_cd = automorphism(G, {"a": "a", "b": "b", "c": "d", "d": "c"})
    D = g_alpha(S, G, tau_ab)
    bundle = grothendieck_bundle(D, S)
    return {
        "space": S,
        "base": S,
        "fiber": S,
        "functor": D,
        "bundle": bundle,
        "other": grothendieck_bundle(g_alpha(S, G, tau_cd), S),
        "map": ContinuousMap.identity(S),
        "projection": bundle.map,
    }


def _f3() -> Dict[str, Any]:
    X = three_point_x()
    F2, F3 = f_functor(2), f_functor(3)
    return {
        "space": X,
        "base": sierpinski(),
        "fiber": X,
        "functor": F3,
        "f1": f_functor(1),
        "f2": F2,
        "bundle": grothendieck_bundle(F2, X),
        "projection": groth(F3).projection,
    }


def _cone() -> Dict[str, Any]:
    X = three_point_x()
    return {"space": X, "base": sierpinski(), "functor": cone_functor(X)}


def _suspension() -> Dict[str, Any]:
    X = three_point_x()
    return {"space": X, "base": suspension_base(), "functor": suspension_functor(X)}


def _non_surjective() -> Dict[str, Any]:
    """p: E -> S with p(a) = 0, p(b) = p(c) = 1; no functor has a projection isomorphic to p."""
    S = sierpinski()
    E = from_relations(["a", "b", "c"], [("a", "b"), ("a", "c")])
    p = ContinuousMap.from_labels(E, S, {"a": "0", "b": "1", "c": "1"})
    return {"space": E, "base": S, "fiber": point(), "projection": p, "map": p}


def _indiscrete_fiber() -> Dict[str, Any]:
    """Indiscrete {1, 2} over SS^0: D_1 and D_2 differ on b <= d only."""
    B, F = ss0(), indiscrete(["1", "2"])
    G = aut_group(F)
    swap = automorphism(G, {"1": "2", "2": "1"})
    D1, D2 = g_alpha(B, G, G.identity), g_alpha(B, G, swap)
    return {
        "space": F,
        "base": B,
        "fiber": F,
        "functor": D2,
        "d1": D1,
        "d2": D2,
        "bundle": grothendieck_bundle(D1, F),
        "other": grothendieck_bundle(D2, F),
        "map": ContinuousMap.identity(B),
        "projection": groth(D2).projection,
    }


EXAMPLES: Dict[str, Callable[[], Dict[str, Any]]] = {
    "sierpinski": _sierpinski,
    "ss0": _ss0,
    "f3": _f3,
    "cone": _cone,
    "suspension": _suspension,
    "non-surjective-E": _non_surjective,
    "indiscrete-fiber": _indiscrete_fiber,
}


def example_names() -> List[str]:
    return list(EXAMPLES)


def example(name: str) -> Dict[str, Any]:
    if name not in EXAMPLES:
        raise InvalidObjectError(f"unknown example {name!r}; known: {', '.join(EXAMPLES)}")
    logger.debug(f"example: building {name}")
    return EXAMPLES[name]()


def example_role(name: str, role: str) -> Any:
    entry = example(name)
    if role not in entry:
        raise InvalidObjectError(f"example {name!r} has no {role!r}; roles: {', '.join(entry)}")
    return entry[role]


__all__ = [
    "EXAMPLES",
    "example",
    "example_names",
    "example_role",
    "sierpinski",
    "ss0",
    "three_point_x",
    "point",
    "f_functor",
    "cone_functor",
    "suspension_base",
    "suspension_functor",
    "automorphism",
    "g_alpha",
]
