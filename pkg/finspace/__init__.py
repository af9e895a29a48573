"""
FIBRA - Finite Alexandroff spaces.
"""

from finspace.constructions import (
    CONE_POINT,
    SUSPENSION_POINTS,
    cone,
    disjoint_union,
    pairing,
    product,
    product_projections,
    suspension,
)
from finspace.homeo import (
    are_homeomorphic,
    find_homeomorphism,
    iter_continuous_maps,
    iter_homeomorphisms,
    point_signature,
)
from finspace.kolmogorov import KolmogorovQuotient, kolmogorov, kolmogorov_map
from finspace.sampling import iter_spaces, random_map, random_space
from finspace.space import (
    ContinuousMap,
    FinSpace,
    Label,
    chain,
    component_indices,
    compose,
    connected_components,
    discrete,
    empty_space,
    from_relations,
    indiscrete,
    is_open,
    label_key,
    minimal_open,
    open_sets,
    pointwise_leq,
    require_open,
    space_from_basis,
)

__all__ = [
    "FinSpace",
    "ContinuousMap",
    "KolmogorovQuotient",
    "Label",
    "from_relations",
    "empty_space",
    "discrete",
    "indiscrete",
    "chain",
    "space_from_basis",
    "minimal_open",
    "is_open",
    "require_open",
    "open_sets",
    "connected_components",
    "component_indices",
    "compose",
    "pointwise_leq",
    "label_key",
    "kolmogorov",
    "kolmogorov_map",
    "product",
    "product_projections",
    "pairing",
    "cone",
    "suspension",
    "disjoint_union",
    "CONE_POINT",
    "SUSPENSION_POINTS",
    "find_homeomorphism",
    "iter_homeomorphisms",
    "iter_continuous_maps",
    "are_homeomorphic",
    "point_signature",
    "random_space",
    "random_map",
    "iter_spaces",
]
