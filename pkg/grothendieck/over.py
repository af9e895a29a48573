"""
FIBRA - Maps over a base: continuous maps and homeomorphisms E1 -> E2 commuting with projections.

One backtracking engine serves over-base map enumeration, bundle trivializations
and bundle isomorphisms.
"""

from typing import Dict, Iterator, List, Optional, Sequence

from loguru import logger

from core.budget import SearchBudget
from core.errors import NotOverBaseError
from finspace.space import ContinuousMap


def is_over_base(alpha: ContinuousMap, p: ContinuousMap, q: ContinuousMap) -> bool:
    """q o alpha = p."""
    return all(q.image[v] == p.image[x] for x, v in enumerate(alpha.image))


def require_over_base(alpha: ContinuousMap, p: ContinuousMap, q: ContinuousMap) -> None:
    for x, v in enumerate(alpha.image):
        if q.image[v] != p.image[x]:
            raise NotOverBaseError(
                f"map sends {alpha.dom.label(x)!r} over {p.cod.label(p.image[x])!r} "
                f"to a point over {q.cod.label(q.image[v])!r}"
            )


def search_order(p: ContinuousMap) -> List[int]:
    """Domain points, fibers over larger minimal opens first, then by index."""
    B = p.cod
    return sorted(range(len(p.dom)), key=lambda x: (-len(B.down_sets[p.image[x]]), p.image[x], x))


def iter_over_maps(
    p: ContinuousMap,
    q: ContinuousMap,
    bijective: bool = False,
    budget: Optional[SearchBudget] = None,
    order: Optional[Sequence[int]] = None,
) -> Iterator[ContinuousMap]:
    """Continuous maps alpha: dom(p) -> dom(q) with q alpha = p.

    With bijective=True only homeomorphisms are produced: the order must be
    reflected as well as preserved.
    """
    E1, E2 = p.dom, q.dom
    if p.cod != q.cod:
        raise NotOverBaseError("maps lie over different bases")
    fibers: Dict[int, List[int]] = {}
    for v, b in enumerate(q.image):
        fibers.setdefault(b, []).append(v)
    if bijective:
        if len(E1) != len(E2):
            return
        for b in set(p.image) | set(q.image):
            if p.image.count(b) != len(fibers.get(b, [])):
                return
    sequence = list(order) if order is not None else search_order(p)
    l1, l2 = E1.leq, E2.leq
    image: Dict[int, int] = {}
    used = set()

    def fits(x: int, c: int) -> bool:
        for y, w in image.items():
            if bijective:
                if l1[x, y] != l2[c, w] or l1[y, x] != l2[w, c]:
                    return False
            else:
                if l1[x, y] and not l2[c, w]:
                    return False
                if l1[y, x] and not l2[w, c]:
                    return False
        return True

    def extend(k: int) -> Iterator[ContinuousMap]:
        if k == len(sequence):
            yield ContinuousMap(E1, E2, [image[x] for x in range(len(E1))], check=False)
            return
        x = sequence[k]
        for c in fibers.get(p.image[x], []):
            if bijective and c in used:
                continue
            if budget is not None:
                budget.tick()
            if fits(x, c):
                image[x] = c
                used.add(c)
                yield from extend(k + 1)
                del image[x]
                used.discard(c)

    yield from extend(0)


def find_over_homeomorphism(
    p: ContinuousMap, q: ContinuousMap, budget: Optional[SearchBudget] = None
) -> Optional[ContinuousMap]:
    """First homeomorphism h with q h = p, or None."""
    found = next(iter_over_maps(p, q, bijective=True, budget=budget), None)
    logger.debug(f"find_over_homeomorphism: {'found' if found else 'none'} ({len(p.dom)} points)")
    return found
