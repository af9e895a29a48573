"""
FIBRA - Random and exhaustive generation of small finite spaces and maps.
"""

from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from finspace.space import ContinuousMap, FinSpace, from_relations, open_sets


def default_labels(n: int, prefix: str = "") -> List[str]:
    return [f"{prefix}{i}" for i in range(n)]


def random_space(
    rng: np.random.Generator,
    n: int,
    t0: bool = False,
    density: float = 0.35,
    labels: Optional[Sequence[str]] = None,
) -> FinSpace:
    """Closure of a random generator relation on n points.

    With t0=True generators only run forward along a random permutation, so the
    closure is a partial order.
    """
    labels = list(labels) if labels is not None else default_labels(n)
    rank = np.argsort(rng.permutation(n))
    gens: List[Tuple[str, str]] = []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            if t0 and rank[a] > rank[b]:
                continue
            if rng.random() < density:
                gens.append((labels[a], labels[b]))
    return from_relations(labels, gens)


def random_map(rng: np.random.Generator, X: FinSpace, Y: FinSpace, attempts: int = 20) -> ContinuousMap:
    """A random order-preserving map X -> Y.

    Points are assigned along a linear extension, each uniformly among the
    values compatible with what is already assigned. Falls back to a constant map.
    """
    n, m = len(X), len(Y)
    if n == 0:
        return ContinuousMap(X, Y, [], check=False)
    lx, ly = X.leq, Y.leq
    for _ in range(attempts):
        image: Dict[int, int] = {}
        for i in X.linear_extension:
            ok = np.ones(m, dtype=bool)
            for j, v in image.items():
                if lx[j, i]:
                    ok &= ly[v, :]
                if lx[i, j]:
                    ok &= ly[:, v]
            choices = np.flatnonzero(ok)
            if not len(choices):
                break
            image[i] = int(rng.choice(choices))
        else:
            return ContinuousMap(X, Y, [image[i] for i in range(n)])
    return ContinuousMap.constant(X, Y, int(rng.integers(m)))


def canonical_matrix(leq: np.ndarray) -> Tuple[bytes, Tuple[int, ...]]:
    """Least byte string of leq over all relabellings, with the permutation achieving it."""
    n = leq.shape[0]
    best: Optional[Tuple[bytes, Tuple[int, ...]]] = None
    for perm in permutations(range(n)):
        p = list(perm)
        key = np.packbits(leq[np.ix_(p, p)]).tobytes()
        if best is None or key < best[0]:
            best = (key, perm)
    assert best is not None
    return best


def iter_spaces(n: int, t0_only: bool = False) -> List[FinSpace]:
    """Every finite space on n points up to homeomorphism, in a fixed order.

    Built one point at a time: a new point is attached below an up-set U and above
    a down-set D of an existing space with D <= U elementwise.
    """
    if n == 0:
        return [FinSpace([], np.zeros((0, 0), dtype=bool))]
    level: Dict[bytes, np.ndarray] = {canonical_matrix(np.ones((1, 1), dtype=bool))[0]: np.ones((1, 1), dtype=bool)}
    for k in range(1, n):
        grown: Dict[bytes, np.ndarray] = {}
        for leq in level.values():
            X = FinSpace(default_labels(k), leq)
            downs = [sorted(X.index(x) for x in s) for s in open_sets(X)]
            ups = [sorted(set(range(k)) - set(d)) for d in downs]
            for D in downs:
                for U in ups:
                    if t0_only and set(D) & set(U):
                        continue
                    if D and U and not leq[np.ix_(D, U)].all():
                        continue
                    new = np.zeros((k + 1, k + 1), dtype=bool)
                    new[:k, :k] = leq
                    new[np.asarray(D, dtype=int), k] = True
                    new[k, np.asarray(U, dtype=int)] = True
                    new[k, k] = True
                    # closure through the new point
                    new[:k, :k] |= np.outer(new[:k, k], new[k, :k])
                    key, perm = canonical_matrix(new)
                    if key not in grown:
                        p = list(perm)
                        grown[key] = new[np.ix_(p, p)]
        level = grown
    spaces = [FinSpace(default_labels(n), level[key]) for key in sorted(level)]
    logger.debug(f"iter_spaces({n}, t0_only={t0_only}): {len(spaces)} spaces")
    return spaces
