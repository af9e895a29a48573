"""
FIBRA - Isomorphism of fiber bundles over a common base.
"""

from typing import Optional

from loguru import logger

from core.budget import SearchBudget
from core.errors import BundleMismatchError
from finspace.homeo import find_homeomorphism
from finspace.space import ContinuousMap
from functorcat.transform import natural_iso
from grothendieck.over import find_over_homeomorphism
from bundles.bundle import FiberBundle, require_verified
from bundles.canonical import canonical_representation


def over_base_isomorphism(
    p: FiberBundle, q: FiberBundle, budget: Optional[SearchBudget] = None
) -> Optional[ContinuousMap]:
    """Direct fiberwise backtracking for a homeomorphism h: E_p -> E_q with q h = p."""
    if p.base != q.base:
        raise BundleMismatchError("bundles lie over different bases")
    return find_over_homeomorphism(p.map, q.map, budget)


def bundle_iso(p: FiberBundle, q: FiberBundle, budget: Optional[SearchBudget] = None) -> Optional[ContinuousMap]:
    """An over-B homeomorphism E_p -> E_q, or None.

    For a T0 fiber this goes through a natural isomorphism of the canonical
    representations, h(x) = theta_{p(x)}(x); otherwise through direct search.
    """
    if p.base != q.base:
        raise BundleMismatchError("bundles lie over different bases")
    if find_homeomorphism(p.fiber, q.fiber) is None:
        raise BundleMismatchError("bundles have non-homeomorphic fibers")
    require_verified(p)
    require_verified(q)
    if not p.fiber.is_t0:
        return over_base_isomorphism(p, q, budget)
    theta = natural_iso(canonical_representation(p).functor, canonical_representation(q).functor, budget)
    if theta is None:
        logger.debug("bundle_iso: canonical representations are not naturally isomorphic")
        return None
    image = [0] * len(p.total)
    for b in range(len(p.base)):
        targets = q.fiber_points(b)
        for k, x in enumerate(p.fiber_points(b)):
            image[x] = targets[theta.components[b].image[k]]
    h = ContinuousMap(p.total, q.total, image)
    if not h.is_homeomorphism:
        raise AssertionError("assembled bundle isomorphism is not a homeomorphism")
    return h
