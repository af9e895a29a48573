"""
FIBRA - Pullback of a fiber bundle along a map of bases.
"""

from typing import Optional

from core.budget import SearchBudget
from finspace.space import ContinuousMap
from grothendieck.pullback import PullbackSquare, pullback_functor
from bundles.bundle import FiberBundle, grothendieck_bundle, require_verified
from bundles.canonical import canonical_representation


def pullback_square(p: FiberBundle, f: ContinuousMap) -> PullbackSquare:
    """∫(𝒟_p f) over dom(f), with its map to ∫𝒟_p."""
    require_verified(p)
    return pullback_functor(canonical_representation(p).functor, f)


def pullback_bundle(p: FiberBundle, f: ContinuousMap, budget: Optional[SearchBudget] = None) -> FiberBundle:
    """f*p as the projection of ∫(𝒟_p f), with explicit trivializations."""
    square = pullback_square(p, f)
    return grothendieck_bundle(square.functor, p.fiber, budget)
