"""
FIBRA - Canonical representation of a fiber bundle as a morphism-inverting functor.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional

from loguru import logger

from core.errors import InvalidObjectError
from finspace.kolmogorov import kolmogorov, kolmogorov_map
from finspace.space import ContinuousMap, label_key
from functorcat.functor import Pair, TopFunctor
from grothendieck.construction import groth
from bundles.bundle import FiberBundle, require_verified


@dataclass(frozen=True)
class CanonicalRep:
    """𝒟_p with 𝒟_p(b) = p^-1(b), plus the bundle it came from."""

    bundle: FiberBundle
    functor: TopFunctor


def delta(bundle: FiberBundle, b: int, b2: int, witness: Optional[ContinuousMap] = None) -> ContinuousMap:
    """Transport p^-1(b) -> p^-1(b2) for b <= b2 through the trivialization over U_b2.

    x |-> phi^-1(b2, pr_F phi(x)), with phi the stored witness unless one is given.
    """
    require_verified(bundle)
    B = bundle.base
    if not B.le(b, b2):
        raise InvalidObjectError(f"{B.label(b)!r} is not <= {B.label(b2)!r}")
    phi = witness if witness is not None else bundle.trivializations[b2]  # type: ignore[index]
    chart = bundle.chart(b2)
    inv = phi.inverse()
    m = len(bundle.fiber)
    pos_total = {x: k for k, x in enumerate(chart.total_points)}
    pos_base = {u: k for k, u in enumerate(chart.base_points)}
    src = bundle.fiber_points(b)
    dst = {x: k for k, x in enumerate(bundle.fiber_points(b2))}
    image = []
    for x in src:
        f = phi.image[pos_total[x]] % m
        y = chart.total_points[inv.image[pos_base[b2] * m + f]]
        image.append(dst[y])
    return ContinuousMap(bundle.fiber_space(b), bundle.fiber_space(b2), image)


def _choice_transport(bundle: FiberBundle, b: int, b2: int, transport: ContinuousMap) -> ContinuousMap:
    """Class-level transport K(delta) lifted through the index-order choice bijections."""
    X, Y = bundle.fiber_space(b), bundle.fiber_space(b2)
    kx, ky = kolmogorov(X), kolmogorov(Y)
    on_classes = kolmogorov_map(transport)

    def ordered(kq, space) -> List[List[int]]:
        return [sorted(members, key=lambda i: label_key(space.label(i))) for members in kq.classes]

    src_classes, dst_classes = ordered(kx, X), ordered(ky, Y)
    image = [0] * len(X)
    for c, members in enumerate(src_classes):
        target = dst_classes[on_classes.image[c]]
        if len(target) != len(members):
            raise InvalidObjectError("transport does not preserve class sizes; not a bundle")
        for rank, x in enumerate(members):
            image[x] = target[rank]
    return ContinuousMap(X, Y, image)


def canonical_representation(bundle: FiberBundle) -> CanonicalRep:
    """𝒟_p: arrows delta_{b,b2} for a T0 fiber, choice-bijection lifts of K(delta) otherwise."""
    require_verified(bundle)
    B = bundle.base
    t0 = bundle.fiber.is_t0
    objects = [bundle.fiber_space(b) for b in range(len(B))]
    arrows: Dict[Pair, ContinuousMap] = {}
    for b, b2 in B.relation_pairs:
        transport = delta(bundle, b, b2)
        arrows[(b, b2)] = transport if t0 else _choice_transport(bundle, b, b2, transport)
    logger.debug(f"canonical_representation: {len(arrows)} arrows, fiber {'T0' if t0 else 'not T0'}")
    return CanonicalRep(bundle, TopFunctor(B, objects, arrows))


def canonical_iso_witness(bundle: FiberBundle, rep: CanonicalRep) -> Optional[ContinuousMap]:
    """phi(x) = (p(x), x): E -> ∫𝒟_p, when it is a homeomorphism (always for a T0 fiber)."""
    G = groth(rep.functor)
    phi_image = [0] * len(bundle.total)
    for b in range(len(bundle.base)):
        for k, x in enumerate(bundle.fiber_points(b)):
            phi_image[x] = G.point(b, k)
    phi = ContinuousMap(bundle.total, G.space, phi_image, check=False)
    if not phi.is_homeomorphism:
        return None
    return phi
