"""
FIBRA - Functors over finite bases, automorphism groups and (weak) natural transformations.
"""

from functorcat.aut import AutGroup, aut_group
from functorcat.enumerate import (
    assignment_of,
    enumerate_functors_to_aut,
    enumerate_group_assignments,
    functor_from_assignment,
    functor_into_group,
    gauge_multiplier,
    regauge,
    spanning_edges,
)
from functorcat.functor import (
    TopFunctor,
    constant_functor,
    functor_from_maps,
    functor_violations,
    is_morphism_inverting,
    require_functor,
    validate_functor,
)
from functorcat.sampling import perturb_within_classes, random_functor, random_group_functor
from functorcat.transform import (
    WeakNatTrans,
    compose_weak,
    identity_transformation,
    is_weak_nat_trans,
    iter_weak_transformations,
    map_preceq,
    natural_iso,
    weak_naturality_failures,
    weak_transformation,
)

__all__ = [
    "TopFunctor",
    "AutGroup",
    "WeakNatTrans",
    "aut_group",
    "constant_functor",
    "functor_from_maps",
    "functor_violations",
    "validate_functor",
    "require_functor",
    "is_morphism_inverting",
    "enumerate_functors_to_aut",
    "enumerate_group_assignments",
    "functor_from_assignment",
    "functor_into_group",
    "assignment_of",
    "gauge_multiplier",
    "regauge",
    "spanning_edges",
    "map_preceq",
    "natural_iso",
    "is_weak_nat_trans",
    "weak_naturality_failures",
    "weak_transformation",
    "compose_weak",
    "identity_transformation",
    "iter_weak_transformations",
    "random_functor",
    "random_group_functor",
    "perturb_within_classes",
]
