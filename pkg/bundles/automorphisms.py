"""
FIBRA - Automorphisms of the trivial bundle over the two-point chain.
"""

from dataclasses import dataclass
from typing import List, Optional

from loguru import logger

from core.budget import SearchBudget
from core.errors import BaseShapeError
from finspace.kolmogorov import kolmogorov_map
from finspace.space import ContinuousMap, FinSpace
from grothendieck.over import iter_over_maps
from bundles.bundle import trivial_bundle


@dataclass(frozen=True)
class AutomorphismReport:
    """phi(b, x) = (b, alpha_b(x)) and the properties it satisfies."""

    phi: ContinuousMap
    lower: ContinuousMap  # alpha_b0
    upper: ContinuousMap  # alpha_b1
    same_on_classes: bool  # K(alpha_b0) = K(alpha_b1)
    square_on_classes: bool  # K((c x Id) phi_0) = K(phi_1 (c x Id))
    product_form: bool  # phi = Id x alpha


def _two_chain(B: FinSpace):
    if len(B) != 2:
        raise BaseShapeError("base must have exactly two points")
    if B.le(0, 1) and not B.le(1, 0):
        return 0, 1
    if B.le(1, 0) and not B.le(0, 1):
        return 1, 0
    raise BaseShapeError("base must be the two-point chain b0 < b1")


def trivial_automorphisms(
    B: FinSpace, F: FinSpace, budget: Optional[SearchBudget] = None
) -> List[AutomorphismReport]:
    """Every over-B self-homeomorphism of B x F with its component maps."""
    b0, b1 = _two_chain(B)
    bundle = trivial_bundle(B, F)
    m = len(F)
    lower_fiber = bundle.fiber_space(b0)
    upper_fiber = bundle.fiber_space(b1)
    # c x Id: {b0} x F -> {b1} x F
    shift = ContinuousMap(lower_fiber, upper_fiber, range(m), check=False)
    reports = []
    for phi in iter_over_maps(bundle.map, bundle.map, bijective=True, budget=budget):
        lower = ContinuousMap(F, F, [phi.image[b0 * m + x] - b0 * m for x in range(m)])
        upper = ContinuousMap(F, F, [phi.image[b1 * m + x] - b1 * m for x in range(m)])
        phi0 = ContinuousMap(lower_fiber, lower_fiber, lower.image, check=False)
        phi1 = ContinuousMap(upper_fiber, upper_fiber, upper.image, check=False)
        reports.append(
            AutomorphismReport(
                phi=phi,
                lower=lower,
                upper=upper,
                same_on_classes=kolmogorov_map(lower).image == kolmogorov_map(upper).image,
                square_on_classes=kolmogorov_map(shift.compose(phi0)).image
                == kolmogorov_map(phi1.compose(shift)).image,
                product_form=lower.image == upper.image,
            )
        )
    if F.is_t0 and not all(r.product_form for r in reports):
        raise AssertionError("automorphism of a trivial bundle with T0 fiber not of the form Id x alpha")
    logger.info(
        f"trivial_automorphisms: {len(reports)} automorphisms, "
        f"{sum(r.product_form for r in reports)} of the form Id x alpha"
    )
    return reports
