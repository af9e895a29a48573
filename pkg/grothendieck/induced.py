"""
FIBRA - Maps of Grothendieck constructions induced by weak natural transformations, and back.
"""

from typing import Iterator, Optional

from core.budget import SearchBudget
from core.errors import NotOverBaseError
from finspace.space import ContinuousMap
from functorcat.transform import WeakNatTrans, weak_transformation
from grothendieck.construction import GrothSpace, groth
from grothendieck.over import iter_over_maps, require_over_base


def induced_map(
    theta: WeakNatTrans,
    source: Optional[GrothSpace] = None,
    target: Optional[GrothSpace] = None,
) -> ContinuousMap:
    """theta_*: ∫C -> ∫D, (b, x) |-> (b, theta_b(x)). Raises WeakNaturalityError."""
    weak_transformation(theta.components, theta.source, theta.target)
    source = source or groth(theta.source)
    target = target or groth(theta.target)
    image = []
    for k in range(len(source.space)):
        b, x = source.tag(k)
        image.append(target.point(b, theta.components[b].image[x]))
    return ContinuousMap(source.space, target.space, image)


hom_bijection_forward = induced_map


def hom_bijection_back(alpha: ContinuousMap, source: GrothSpace, target: GrothSpace) -> WeakNatTrans:
    """Components alpha_b = pr o alpha o iota_b of an over-B map alpha: ∫C -> ∫D."""
    if alpha.dom != source.space or alpha.cod != target.space:
        raise NotOverBaseError("map is not between the given Grothendieck constructions")
    require_over_base(alpha, source.projection, target.projection)
    C, D = source.functor, target.functor
    components = []
    for b in range(len(C.base)):
        image = [target.tag(alpha.image[k])[1] for k in source.fiber(b)]
        components.append(ContinuousMap(C.objects[b], D.objects[b], image))
    return weak_transformation(components, C, D)


def iter_over_base_maps(
    source: GrothSpace, target: GrothSpace, budget: Optional[SearchBudget] = None
) -> Iterator[ContinuousMap]:
    """Every continuous map ∫C -> ∫D commuting with the projections."""
    yield from iter_over_maps(source.projection, target.projection, budget=budget)
