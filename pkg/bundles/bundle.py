"""
FIBRA - Fiber bundles over finite spaces and their local trivializations.
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from loguru import logger

from core.budget import SearchBudget
from core.errors import BundleMismatchError, UnverifiedBundleError
from finspace.constructions import product
from finspace.homeo import find_homeomorphism
from finspace.space import ContinuousMap, FinSpace
from functorcat.functor import TopFunctor, is_morphism_inverting
from grothendieck.construction import groth
from grothendieck.over import find_over_homeomorphism


@dataclass(frozen=True)
class LocalChart:
    """Domain and codomain of a trivialization over U_b.

    `total` is p^-1(U_b) as a subspace of E (points `total_points`, ascending);
    `trivial` is U_b x F with U_b the subspace on `base_points`.
    """

    b: int
    total: FinSpace
    total_points: Tuple[int, ...]
    local_map: ContinuousMap  # p restricted: total -> U_b
    trivial: FinSpace
    trivial_map: ContinuousMap  # first projection: trivial -> U_b
    base_points: Tuple[int, ...]


def local_chart(p: ContinuousMap, F: FinSpace, b: int) -> LocalChart:
    E, B = p.dom, p.cod
    base_points = tuple(sorted(B.down_sets[b]))
    Ub = B.subspace(base_points)
    pos = {u: k for k, u in enumerate(base_points)}
    total_points = tuple(x for x in range(len(E)) if p.image[x] in pos)
    total = E.subspace(total_points)
    local_map = ContinuousMap(total, Ub, [pos[p.image[x]] for x in total_points], check=False)
    trivial = product(Ub, F)
    m = len(F)
    trivial_map = ContinuousMap(trivial, Ub, [k // m for k in range(len(trivial))], check=False)
    return LocalChart(b, total, total_points, local_map, trivial, trivial_map, base_points)


@dataclass(frozen=True)
class FiberBundle:
    """p: E -> B with designated fiber F; `trivializations[b]` maps p^-1(U_b) onto U_b x F."""

    total: FinSpace
    base: FinSpace
    map: ContinuousMap
    fiber: FinSpace
    trivializations: Optional[Dict[int, ContinuousMap]] = field(default=None, compare=False, hash=False)

    @property
    def verified(self) -> bool:
        return self.trivializations is not None and len(self.trivializations) == len(self.base)

    def chart(self, b: int) -> LocalChart:
        return local_chart(self.map, self.fiber, b)

    def fiber_points(self, b: int) -> List[int]:
        """p^-1(b) in ascending index order."""
        return [x for x, v in enumerate(self.map.image) if v == b]

    def fiber_space(self, b: int) -> FinSpace:
        return self.total.subspace(self.fiber_points(b))


def make_bundle(p: ContinuousMap, F: FinSpace) -> FiberBundle:
    """Unverified bundle candidate."""
    return FiberBundle(p.dom, p.cod, p, F)


def require_verified(bundle: FiberBundle) -> FiberBundle:
    if not bundle.verified:
        raise UnverifiedBundleError("bundle has no trivialization witnesses; run verification first")
    return bundle


def witness_problems(bundle: FiberBundle, b: int, phi: ContinuousMap) -> List[str]:
    """Why `phi` fails to be a trivialization over U_b (empty when it is one)."""
    chart = bundle.chart(b)
    label = bundle.base.label(b)
    if phi.dom != chart.total or phi.cod != chart.trivial:
        return [f"witness over {label!r} is not a map p^-1(U_b) -> U_b x F"]
    out = []
    if not phi.is_homeomorphism:
        out.append(f"witness over {label!r} is not a homeomorphism")
    if chart.trivial_map.compose(phi).image != chart.local_map.image:
        out.append(f"witness over {label!r} does not commute with the projections to U_b")
    return out


def trivial_bundle(B: FinSpace, F: FinSpace) -> FiberBundle:
    """First projection B x F -> B with identity trivializations."""
    E = product(B, F)
    m = len(F)
    p = ContinuousMap(E, B, [k // m for k in range(len(E))], check=False) if m else ContinuousMap(E, B, [], check=False)
    witnesses: Dict[int, ContinuousMap] = {}
    for b in range(len(B)):
        chart = local_chart(p, F, b)
        # both sides list (u, f) pairs u-major over the same U_b
        witnesses[b] = ContinuousMap(chart.total, chart.trivial, range(len(chart.total)), check=False)
    return FiberBundle(E, B, p, F, witnesses)


def verify_bundle(
    p: ContinuousMap, F: FinSpace, budget: Optional[SearchBudget] = None
) -> Optional[FiberBundle]:
    """Search an over-U_b homeomorphism p^-1(U_b) -> U_b x F for every b.

    Returns the bundle with its witnesses, or None when some U_b has none.
    """
    B = p.cod
    for b in range(len(B)):
        fiber = p.dom.subspace([x for x, v in enumerate(p.image) if v == b])
        if len(fiber) != len(F) or find_homeomorphism(fiber, F, budget) is None:
            logger.debug(f"verify_bundle: fiber over {B.label(b)!r} is not homeomorphic to F")
            return None
    witnesses: Dict[int, ContinuousMap] = {}
    for b in range(len(B)):
        chart = local_chart(p, F, b)
        phi = find_over_homeomorphism(chart.local_map, chart.trivial_map, budget)
        if phi is None:
            logger.debug(f"verify_bundle: no trivialization over U_{B.label(b)}")
            return None
        witnesses[b] = phi
    logger.info(f"verify_bundle: locally trivial over all {len(B)} minimal opens")
    return FiberBundle(p.dom, B, p, F, witnesses)


def with_witnesses(bundle: FiberBundle, budget: Optional[SearchBudget] = None) -> FiberBundle:
    """The bundle itself when verified, else the result of verification."""
    if bundle.verified:
        return bundle
    found = verify_bundle(bundle.map, bundle.fiber, budget)
    if found is None:
        raise UnverifiedBundleError("map is not a fiber bundle with the given fiber")
    return found


def grothendieck_bundle(D: TopFunctor, F: FinSpace, budget: Optional[SearchBudget] = None) -> FiberBundle:
    """The projection of ∫D as a bundle with fiber F.

    For a morphism-inverting D with every D(b) homeomorphic to F the witnesses are
    explicit: phi(beta, x) = (beta, h D(beta <= b)(x)) with h: D(b) -> F.
    """
    G = groth(D)
    p = G.projection
    if not is_morphism_inverting(D):
        found = verify_bundle(p, F, budget)
        if found is None:
            raise UnverifiedBundleError("projection of the Grothendieck construction is not a bundle with this fiber")
        return found
    B = D.base
    witnesses: Dict[int, ContinuousMap] = {}
    for b in range(len(B)):
        h = find_homeomorphism(D.objects[b], F, budget)
        if h is None:
            raise BundleMismatchError(f"D({B.label(b)}) is not homeomorphic to the fiber")
        chart = local_chart(p, F, b)
        pos = {u: k for k, u in enumerate(chart.base_points)}
        m = len(F)
        image = []
        for k in chart.total_points:
            beta, x = G.tag(k)
            image.append(pos[beta] * m + h.image[D.arrows[(beta, b)].image[x]])
        witnesses[b] = ContinuousMap(chart.total, chart.trivial, image, check=False)
    return FiberBundle(G.space, B, p, F, witnesses)


def attach_witnesses(bundle: FiberBundle, witnesses: Dict[int, ContinuousMap]) -> FiberBundle:
    """Bundle carrying externally supplied witnesses, each re-validated."""
    for b, phi in witnesses.items():
        problems = witness_problems(bundle, b, phi)
        if problems:
            raise UnverifiedBundleError(problems[0])
    return replace(bundle, trivializations=dict(witnesses))
