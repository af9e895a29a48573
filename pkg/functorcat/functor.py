"""
FIBRA - Functors from a finite base space into finite spaces.
"""

from collections import deque
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from loguru import logger

from core.errors import FunctorError, UnknownPointError
from finspace.space import ContinuousMap, FinSpace, Label

Pair = Tuple[int, int]


class TopFunctor:
    """A functor D: B -> Top with finite values.

    `objects[b]` is D(b) for base index b; `arrows[(b, b2)]` is D(b <= b2) for
    every comparable pair, identities included.
    """

    __slots__ = ("base", "objects", "arrows", "_key")

    def __init__(self, base: FinSpace, objects: Sequence[FinSpace], arrows: Mapping[Pair, ContinuousMap]):
        objects = tuple(objects)
        if len(objects) != len(base):
            raise FunctorError(f"functor has {len(objects)} objects for a base of {len(base)} points")
        table: Dict[Pair, ContinuousMap] = {}
        for i, j in base.relation_pairs:
            arrow = arrows.get((i, j))
            if arrow is None:
                raise FunctorError(f"no arrow for {base.label(i)!r} <= {base.label(j)!r}")
            if len(arrow.dom) != len(objects[i]) or len(arrow.cod) != len(objects[j]):
                raise FunctorError(
                    f"arrow for {base.label(i)!r} <= {base.label(j)!r} has the wrong domain or codomain"
                )
            table[(i, j)] = arrow
        self.base = base
        self.objects = objects
        self.arrows = table
        self._key = None

    @classmethod
    def from_generators(
        cls,
        base: FinSpace,
        objects: Sequence[FinSpace],
        arrows: Mapping[Pair, ContinuousMap],
    ) -> "TopFunctor":
        """Complete a table given on generating pairs.

        Missing pairs are composed along a shortest chain of given arrows (ties go
        to smaller indices); identities are filled in. Given composites are kept
        as is, so `functor_violations` reports any disagreement.
        """
        adj: Dict[int, List[int]] = {i: [] for i in range(len(base))}
        for (i, j) in sorted(arrows):
            if not base.le(i, j):
                raise FunctorError(f"arrow given for incomparable pair {base.label(i)!r}, {base.label(j)!r}")
            if i != j:
                adj[i].append(j)
        table: Dict[Pair, ContinuousMap] = dict(arrows)
        for src in range(len(base)):
            if (src, src) not in table:
                table[(src, src)] = ContinuousMap.identity(objects[src])
            # BFS over given arrows, composing as we go
            reached: Dict[int, ContinuousMap] = {src: table[(src, src)]}
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in adj[u]:
                    if v in reached:
                        continue
                    reached[v] = arrows[(u, v)].compose(reached[u])
                    queue.append(v)
            for dst, arrow in reached.items():
                table.setdefault((src, dst), arrow)
        missing = [(i, j) for i, j in base.relation_pairs if (i, j) not in table]
        if missing:
            i, j = missing[0]
            raise FunctorError(f"no chain of given arrows from {base.label(i)!r} to {base.label(j)!r}")
        return cls(base, objects, table)

    # -- access ---------------------------------------------------------------

    def object_at(self, b: Label) -> FinSpace:
        return self.objects[self.base.index(b)]

    def arrow_at(self, b: Label, b2: Label) -> ContinuousMap:
        i, j = self.base.index(b), self.base.index(b2)
        if (i, j) not in self.arrows:
            raise UnknownPointError(f"{b!r} is not <= {b2!r} in the base")
        return self.arrows[(i, j)]

    def arrow(self, i: int, j: int) -> ContinuousMap:
        return self.arrows[(i, j)]

    @property
    def key(self) -> Tuple:
        if self._key is None:
            self._key = (
                self.base,
                self.objects,
                tuple(sorted((p, a.image) for p, a in self.arrows.items())),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TopFunctor):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"TopFunctor(base={len(self.base)} pts, fibers={[len(o) for o in self.objects]})"

    # -- derived functors -------------------------------------------------------

    def precompose(self, f: ContinuousMap) -> "TopFunctor":
        """D f over dom(f): objects D(f(x)), arrows D(f(x) <= f(x'))."""
        if f.cod != self.base:
            raise FunctorError("map does not land in the functor's base")
        X = f.dom
        objects = [self.objects[f.image[x]] for x in range(len(X))]
        arrows = {(x, y): self.arrows[(f.image[x], f.image[y])] for x, y in X.relation_pairs}
        return TopFunctor(X, objects, arrows)


def functor_violations(D: TopFunctor) -> List[str]:
    """Every failure of the identity and composition laws, one message per chain."""
    B = D.base
    out: List[str] = []
    for i in range(len(B)):
        if D.arrows[(i, i)].image != tuple(range(len(D.objects[i]))):
            out.append(f"D({B.label(i)} <= {B.label(i)}) is not the identity")
    for (i, j), a in D.arrows.items():
        bad = a.first_order_violation()
        if bad is not None:
            x, y = bad
            out.append(
                f"D({B.label(i)} <= {B.label(j)}) is not continuous at "
                f"{a.dom.label(x)} <= {a.dom.label(y)}"
            )
    n = len(B)
    for i in range(n):
        for j in range(n):
            if not B.le(i, j):
                continue
            ij = D.arrows[(i, j)].image
            for k in range(n):
                if not B.le(j, k):
                    continue
                jk = D.arrows[(j, k)].image
                if tuple(jk[v] for v in ij) != D.arrows[(i, k)].image:
                    out.append(
                        f"D({B.label(j)} <= {B.label(k)}) o D({B.label(i)} <= {B.label(j)}) "
                        f"!= D({B.label(i)} <= {B.label(k)}) on chain "
                        f"{B.label(i)} <= {B.label(j)} <= {B.label(k)}"
                    )
    if out:
        logger.debug(f"functor_violations: {len(out)} failures")
    return out


def validate_functor(D: TopFunctor) -> bool:
    return not functor_violations(D)


def require_functor(D: TopFunctor) -> TopFunctor:
    problems = functor_violations(D)
    if problems:
        raise FunctorError(problems[0], violations=problems)
    return D


def is_morphism_inverting(D: TopFunctor) -> bool:
    """Every D(b <= b2) is a homeomorphism."""
    return all(a.is_homeomorphism for a in D.arrows.values())


def constant_functor(B: FinSpace, F: FinSpace) -> TopFunctor:
    ident = ContinuousMap.identity(F)
    return TopFunctor(B, [F] * len(B), {p: ident for p in B.relation_pairs})


def functor_from_maps(
    base: FinSpace, objects: Sequence[FinSpace], arrows: Iterable[Tuple[Label, Label, Mapping[Label, Label]]]
) -> TopFunctor:
    """Build from label-level arrows (source, target, point mapping) on generating pairs."""
    table: Dict[Pair, ContinuousMap] = {}
    for src, dst, mapping in arrows:
        i, j = base.index(src), base.index(dst)
        table[(i, j)] = ContinuousMap.from_labels(objects[i], objects[j], mapping)
    return TopFunctor.from_generators(base, objects, table)

