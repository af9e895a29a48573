"""
FIBRA - The preorder on maps, weak natural transformations and natural isomorphisms.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from core.budget import SearchBudget
from core.errors import FunctorError, InvalidObjectError, WeakNaturalityError
from finspace.homeo import iter_continuous_maps, iter_homeomorphisms
from finspace.space import ContinuousMap, component_indices
from functorcat.functor import TopFunctor, is_morphism_inverting


def map_preceq(f: ContinuousMap, g: ContinuousMap) -> bool:
    """f ⪯ g: g^-1(V) ⊆ f^-1(V) for every open V of the codomain.

    Testing V = U_y for every y suffices, which reduces to f(x) <= g(x) pointwise.
    """
    if f.dom != g.dom or f.cod != g.cod:
        raise InvalidObjectError("⪯ compares maps with different domains or codomains")
    if not f.image:
        return True
    return bool(f.cod.leq[np.asarray(f.image), np.asarray(g.image)].all())


@dataclass(frozen=True)
class WeakNatTrans:
    """theta: C => D with components theta_b: C(b) -> D(b), indexed by base point."""

    source: TopFunctor
    target: TopFunctor
    components: Tuple[ContinuousMap, ...]

    def component_at(self, b) -> ContinuousMap:
        return self.components[self.source.base.index(b)]

    @property
    def is_strict(self) -> bool:
        """The naturality squares commute on the nose."""
        C, D = self.source, self.target
        for (i, j), c in C.arrows.items():
            left = D.arrows[(i, j)].compose(self.components[i])
            right = self.components[j].compose(c)
            if left.image != right.image:
                return False
        return True

    @property
    def is_isomorphism(self) -> bool:
        return self.is_strict and all(t.is_homeomorphism for t in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeakNatTrans):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and tuple(t.image for t in self.components) == tuple(t.image for t in other.components)
        )

    def __hash__(self) -> int:
        return hash(tuple(t.image for t in self.components))


def _check_components(components: Sequence[ContinuousMap], C: TopFunctor, D: TopFunctor) -> None:
    if C.base != D.base:
        raise FunctorError("functors are defined over different bases")
    if len(components) != len(C.base):
        raise WeakNaturalityError(f"{len(components)} components for a base of {len(C.base)} points")
    for b, theta in enumerate(components):
        if theta.dom != C.objects[b] or theta.cod != D.objects[b]:
            raise WeakNaturalityError(f"component at {C.base.label(b)!r} has the wrong domain or codomain")


def weak_naturality_failures(components: Sequence[ContinuousMap], C: TopFunctor, D: TopFunctor) -> List[str]:
    _check_components(components, C, D)
    B = C.base
    out = []
    for (i, j), c in C.arrows.items():
        left = D.arrows[(i, j)].compose(components[i])
        right = components[j].compose(c)
        if not map_preceq(left, right):
            out.append(
                f"D({B.label(i)} <= {B.label(j)}) o theta_{B.label(i)} is not ⪯ "
                f"theta_{B.label(j)} o C({B.label(i)} <= {B.label(j)})"
            )
    return out


def is_weak_nat_trans(components: Sequence[ContinuousMap], C: TopFunctor, D: TopFunctor) -> bool:
    """D(b1 <= b2) theta_b1 ⪯ theta_b2 C(b1 <= b2) for every comparable pair."""
    if isinstance(components, WeakNatTrans):
        components = components.components
    return not weak_naturality_failures(components, C, D)


def weak_transformation(components: Sequence[ContinuousMap], C: TopFunctor, D: TopFunctor) -> WeakNatTrans:
    """Validated constructor."""
    problems = weak_naturality_failures(components, C, D)
    if problems:
        raise WeakNaturalityError(problems[0])
    return WeakNatTrans(C, D, tuple(components))


def identity_transformation(C: TopFunctor) -> WeakNatTrans:
    return WeakNatTrans(C, C, tuple(ContinuousMap.identity(X) for X in C.objects))


def compose_weak(theta: WeakNatTrans, psi: WeakNatTrans) -> WeakNatTrans:
    """theta o psi, componentwise."""
    if psi.target != theta.source:
        raise FunctorError("composite of weak transformations whose functors do not match")
    return WeakNatTrans(
        psi.source,
        theta.target,
        tuple(t.compose(p) for t, p in zip(theta.components, psi.components)),
    )


def iter_weak_transformations(
    C: TopFunctor, D: TopFunctor, budget: Optional[SearchBudget] = None
) -> Iterator[WeakNatTrans]:
    """Every weak natural transformation C => D, by backtracking over the base."""
    if C.base != D.base:
        raise FunctorError("functors are defined over different bases")
    B = C.base
    n = len(B)
    candidates = [list(iter_continuous_maps(C.objects[b], D.objects[b], budget)) for b in range(n)]
    chosen: List[Optional[ContinuousMap]] = [None] * n

    def fits(b: int, theta: ContinuousMap) -> bool:
        for a in range(b + 1):
            other = theta if a == b else chosen[a]
            for i, j, ti, tj in ((a, b, other, theta), (b, a, theta, other)):
                if (i, j) in C.arrows:
                    left = D.arrows[(i, j)].compose(ti)
                    right = tj.compose(C.arrows[(i, j)])
                    if not map_preceq(left, right):
                        return False
        return True

    def extend(b: int) -> Iterator[WeakNatTrans]:
        if b == n:
            yield WeakNatTrans(C, D, tuple(chosen))  # type: ignore[arg-type]
            return
        for theta in candidates[b]:
            if budget is not None:
                budget.tick()
            if fits(b, theta):
                chosen[b] = theta
                yield from extend(b + 1)
        chosen[b] = None

    yield from extend(0)


def _propagate(
    C: TopFunctor, D: TopFunctor, comp: Sequence[int], root_map: ContinuousMap
) -> Dict[int, ContinuousMap]:
    """Spread g_root over a component along a BFS zigzag tree of invertible arrows."""
    B = C.base
    g: Dict[int, ContinuousMap] = {comp[0]: root_map}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for v in comp:
            if v in g:
                continue
            if B.le(u, v):
                g[v] = D.arrows[(u, v)].compose(g[u]).compose(C.arrows[(u, v)].inverse())
            elif B.le(v, u):
                g[v] = D.arrows[(v, u)].inverse().compose(g[u]).compose(C.arrows[(v, u)])
            else:
                continue
            queue.append(v)
    return g


def _squares_commute(C: TopFunctor, D: TopFunctor, g: Dict[int, ContinuousMap], pairs) -> bool:
    for i, j in pairs:
        if i not in g or j not in g:
            continue
        left = D.arrows[(i, j)].image
        right = C.arrows[(i, j)].image
        gi, gj = g[i].image, g[j].image
        if any(left[gi[x]] != gj[right[x]] for x in range(len(gi))):
            return False
    return True


def natural_iso(
    C: TopFunctor, D: TopFunctor, budget: Optional[SearchBudget] = None
) -> Optional[WeakNatTrans]:
    """A natural isomorphism C => D (homeomorphic components), or None.

    Each component of the base is rooted at its least point. For morphism-inverting
    functors a root candidate determines the rest by propagation; otherwise the
    search backtracks over homeomorphism candidates point by point.
    """
    if C.base != D.base:
        raise FunctorError("functors are defined over different bases")
    B = C.base
    for b in range(len(B)):
        if len(C.objects[b]) != len(D.objects[b]):
            return None
    inv_c, inv_d = is_morphism_inverting(C), is_morphism_inverting(D)
    if inv_c != inv_d:
        return None
    g: Dict[int, ContinuousMap] = {}
    for comp in component_indices(B):
        members = set(comp)
        pairs = [(i, j) for i, j in B.relation_pairs if i in members]
        found: Optional[Dict[int, ContinuousMap]] = None
        if inv_c:
            for h in iter_homeomorphisms(C.objects[comp[0]], D.objects[comp[0]], budget):
                if budget is not None:
                    budget.tick(len(comp))
                trial = _propagate(C, D, comp, h)
                if all(trial[b].is_homeomorphism for b in comp) and _squares_commute(C, D, trial, pairs):
                    found = trial
                    break
        else:
            found = _backtrack_component(C, D, comp, pairs, budget)
        if found is None:
            logger.debug(f"natural_iso: no isomorphism on component rooted at {B.label(comp[0])!r}")
            return None
        g.update(found)
    return WeakNatTrans(C, D, tuple(g[b] for b in range(len(B))))


def _backtrack_component(
    C: TopFunctor, D: TopFunctor, comp: Sequence[int], pairs, budget: Optional[SearchBudget]
) -> Optional[Dict[int, ContinuousMap]]:
    B = C.base
    order = [b for b in B.linear_extension if b in set(comp)]
    # root the search at the least point of the component
    order.remove(comp[0])
    order.insert(0, comp[0])
    candidates = {b: list(iter_homeomorphisms(C.objects[b], D.objects[b], budget)) for b in comp}
    if any(not c for c in candidates.values()):
        return None
    g: Dict[int, ContinuousMap] = {}

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        b = order[k]
        local = [(i, j) for i, j in pairs if (i == b or j == b) and (i in g or i == b) and (j in g or j == b)]
        for h in candidates[b]:
            if budget is not None:
                budget.tick()
            g[b] = h
            if _squares_commute(C, D, g, local) and extend(k + 1):
                return True
            del g[b]
        return False

    return dict(g) if extend(0) else None
