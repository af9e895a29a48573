"""
FIBRA - The topological Grothendieck construction.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Tuple

import numpy as np
from loguru import logger

from finspace.space import ContinuousMap, FinSpace, Label, open_sets, require_open, space_from_basis
from functorcat.functor import TopFunctor, require_functor


@dataclass(frozen=True)
class GrothSpace:
    """∫D with its projection to the base.

    Points are the pairs (b, x) in base-major, fiber-minor order; `offsets[b]` is
    the index of (b, first point of D(b)).
    """

    functor: TopFunctor
    space: FinSpace
    projection: ContinuousMap
    offsets: Tuple[int, ...]

    @property
    def base(self) -> FinSpace:
        return self.functor.base

    def point(self, b: int, x: int) -> int:
        return self.offsets[b] + x

    def tag(self, k: int) -> Tuple[int, int]:
        """(b, x) indices of point k."""
        b = self.projection.image[k]
        return b, k - self.offsets[b]

    def fiber(self, b: int) -> range:
        return range(self.offsets[b], self.offsets[b] + len(self.functor.objects[b]))


def groth(D: TopFunctor) -> GrothSpace:
    """∫D ordered by (β, y) <= (b, x) iff β <= b and D(β <= b)(y) <= x."""
    require_functor(D)
    B = D.base
    sizes = [len(X) for X in D.objects]
    offsets = tuple(int(v) for v in np.concatenate([[0], np.cumsum(sizes)])[: len(B)]) if len(B) else ()
    total = int(sum(sizes))
    leq = np.zeros((total, total), dtype=bool)
    for (beta, b), arrow in D.arrows.items():
        if not sizes[beta] or not sizes[b]:
            continue
        rows = slice(offsets[beta], offsets[beta] + sizes[beta])
        cols = slice(offsets[b], offsets[b] + sizes[b])
        leq[rows, cols] = D.objects[b].leq[np.asarray(arrow.image), :]
    labels = [(B.label(b), x) for b in range(len(B)) for x in D.objects[b].labels]
    space = FinSpace(labels, leq)
    projection = ContinuousMap(space, B, [b for b in range(len(B)) for _ in range(sizes[b])], check=False)
    logger.debug(f"groth: {total} points over a {len(B)}-point base")
    return GrothSpace(D, space, projection, offsets)


def j_basis(D: TopFunctor, b: Label, V: Iterable[Label]) -> FrozenSet[Tuple[Label, Label]]:
    """J(b, V) = union over v in U_b of {v} x D(v <= b)^-1(V), as (v, y) labels."""
    B = D.base
    i = B.index(b)
    target = require_open(D.objects[i], V)
    out = set()
    for v in sorted(B.down_sets[i]):
        arrow = D.arrows[(v, i)]
        for y in arrow.preimage(target):
            out.add((B.label(v), D.objects[v].label(y)))
    return frozenset(out)


def j_basis_sets(D: TopFunctor) -> List[FrozenSet[Tuple[Label, Label]]]:
    """Every J(b, V) for b in B and V open in D(b)."""
    return [j_basis(D, b, V) for b in D.base.labels for V in open_sets(D.object_at(b))]


def basis_space(D: TopFunctor) -> FinSpace:
    """∫D as the space generated by the J-basis, with the same point order as `groth`."""
    labels = [(D.base.label(b), x) for b in range(len(D.base)) for x in D.objects[b].labels]
    return space_from_basis(labels, j_basis_sets(D))


def embedding(G: GrothSpace, b: Label) -> ContinuousMap:
    """iota_b: D(b) -> ∫D, x |-> (b, x)."""
    i = G.base.index(b)
    X = G.functor.objects[i]
    return ContinuousMap(X, G.space, [G.offsets[i] + x for x in range(len(X))])
