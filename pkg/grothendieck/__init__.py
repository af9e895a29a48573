"""
FIBRA - Topological Grothendieck construction.
"""

from grothendieck.construction import GrothSpace, basis_space, embedding, groth, j_basis, j_basis_sets
from grothendieck.induced import hom_bijection_back, hom_bijection_forward, induced_map, iter_over_base_maps
from grothendieck.over import find_over_homeomorphism, is_over_base, iter_over_maps, require_over_base
from grothendieck.pullback import PullbackSquare, pullback_functor

__all__ = [
    "GrothSpace",
    "PullbackSquare",
    "groth",
    "j_basis",
    "j_basis_sets",
    "basis_space",
    "embedding",
    "induced_map",
    "hom_bijection_forward",
    "hom_bijection_back",
    "iter_over_base_maps",
    "pullback_functor",
    "iter_over_maps",
    "find_over_homeomorphism",
    "is_over_base",
    "require_over_base",
]
