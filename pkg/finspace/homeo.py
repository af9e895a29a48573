"""
FIBRA - Homeomorphism and continuous-map search by backtracking.
"""

from collections import Counter
from typing import Iterator, List, Optional, Tuple

from loguru import logger

from core.budget import SearchBudget
from finspace.space import ContinuousMap, FinSpace


def point_signature(X: FinSpace, i: int) -> Tuple[int, int, int, int, int]:
    """Homeomorphism-invariant data of a point: |U_x|, |up-set|, cover degrees, class size."""
    lower = sum(1 for a, b in X.hasse_edges if b == i)
    upper = sum(1 for a, b in X.hasse_edges if a == i)
    cls = sum(1 for j in X.down_sets[i] if X.equivalent(i, j))
    return (len(X.down_sets[i]), len(X.up_sets[i]), lower, upper, cls)


def _signatures(X: FinSpace) -> List[Tuple[int, int, int, int, int]]:
    return [point_signature(X, i) for i in range(len(X))]


def iter_homeomorphisms(
    X: FinSpace, Y: FinSpace, budget: Optional[SearchBudget] = None
) -> Iterator[ContinuousMap]:
    """All order-isomorphisms X -> Y, lexicographic in the image tuple."""
    n = len(X)
    if n != len(Y):
        return
    sx, sy = _signatures(X), _signatures(Y)
    if Counter(sx) != Counter(sy):
        return
    candidates = [[j for j in range(n) if sy[j] == sx[i]] for i in range(n)]
    lx, ly = X.leq, Y.leq
    image: List[int] = [0] * n
    used = [False] * n

    def extend(i: int) -> Iterator[ContinuousMap]:
        if i == n:
            yield ContinuousMap(X, Y, image, check=False)
            return
        for c in candidates[i]:
            if used[c]:
                continue
            if budget is not None:
                budget.tick()
            if all(lx[i, j] == ly[c, image[j]] and lx[j, i] == ly[image[j], c] for j in range(i)):
                image[i] = c
                used[c] = True
                yield from extend(i + 1)
                used[c] = False

    yield from extend(0)


def find_homeomorphism(
    X: FinSpace, Y: FinSpace, budget: Optional[SearchBudget] = None
) -> Optional[ContinuousMap]:
    """First order-isomorphism X -> Y in lexicographic order, or None."""
    found = next(iter_homeomorphisms(X, Y, budget), None)
    logger.debug(f"find_homeomorphism({len(X)} pts, {len(Y)} pts): {'found' if found else 'none'}")
    return found


def are_homeomorphic(X: FinSpace, Y: FinSpace) -> bool:
    return find_homeomorphism(X, Y) is not None


def iter_continuous_maps(
    X: FinSpace, Y: FinSpace, budget: Optional[SearchBudget] = None
) -> Iterator[ContinuousMap]:
    """All order-preserving maps X -> Y, lexicographic in the image tuple."""
    n, m = len(X), len(Y)
    if n and not m:
        return
    lx, ly = X.leq, Y.leq
    image: List[int] = [0] * n

    def extend(i: int) -> Iterator[ContinuousMap]:
        if i == n:
            yield ContinuousMap(X, Y, image, check=False)
            return
        for c in range(m):
            if budget is not None:
                budget.tick()
            ok = True
            for j in range(i):
                if lx[i, j] and not ly[c, image[j]]:
                    ok = False
                    break
                if lx[j, i] and not ly[image[j], c]:
                    ok = False
                    break
            if ok:
                image[i] = c
                yield from extend(i + 1)

    yield from extend(0)
