"""
FIBRA - Finite Alexandroff spaces as preorders.

A FinSpace is a finite set of labelled points with its specialization preorder
stored as a dense boolean matrix: leq[i, j] is True iff point i lies in the
minimal open set of point j. Open sets are exactly the down-sets.
"""

from functools import cached_property
from typing import Any, Dict, FrozenSet, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from loguru import logger

from core.errors import (
    DuplicateLabelError,
    NotContinuousError,
    NotOpenError,
    UnknownPointError,
)

Label = Hashable


def label_key(label: Label) -> Any:
    """Sort key giving a deterministic lexicographic order on mixed labels."""
    if isinstance(label, tuple):
        return tuple(label_key(part) for part in label)
    return (str(label),)


class FinSpace:
    """Finite preordered set standing for a finite Alexandroff space. Immutable."""

    __slots__ = ("_labels", "_index", "_leq", "_generators", "__dict__")

    def __init__(
        self,
        labels: Sequence[Label],
        leq: np.ndarray,
        generators: Optional[Iterable[Tuple[int, int]]] = None,
    ):
        labels = tuple(labels)
        index: Dict[Label, int] = {}
        for i, lab in enumerate(labels):
            if lab in index:
                raise DuplicateLabelError(f"duplicate point label {lab!r}")
            index[lab] = i
        n = len(labels)
        matrix = np.array(leq, dtype=bool).reshape(n, n) if n else np.zeros((0, 0), dtype=bool)
        matrix.setflags(write=False)
        self._labels = labels
        self._index = index
        self._leq = matrix
        self._generators = tuple(generators) if generators is not None else None

    # -- basic access -------------------------------------------------------

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self._labels

    @property
    def leq(self) -> np.ndarray:
        """Read-only boolean matrix of the preorder."""
        return self._leq

    def __len__(self) -> int:
        return len(self._labels)

    def __iter__(self) -> Iterator[Label]:
        return iter(self._labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownPointError(f"unknown point {label!r}") from None

    def label(self, i: int) -> Label:
        return self._labels[i]

    def le(self, i: int, j: int) -> bool:
        return bool(self._leq[i, j])

    def le_labels(self, x: Label, y: Label) -> bool:
        return bool(self._leq[self.index(x), self.index(y)])

    def equivalent(self, i: int, j: int) -> bool:
        return bool(self._leq[i, j] and self._leq[j, i])

    @property
    def generators(self) -> Tuple[Tuple[int, int], ...]:
        """Generator pairs as given at construction, else the Hasse edges plus
        every pair of distinct indistinguishable points."""
        if self._generators is not None:
            return self._generators
        n = len(self)
        twins = tuple((i, j) for i in range(n) for j in range(n) if i != j and self.equivalent(i, j))
        return self.hasse_edges + twins

    # -- derived structure --------------------------------------------------

    @cached_property
    def down_sets(self) -> Tuple[FrozenSet[int], ...]:
        """U_x for every point x, as index sets."""
        return tuple(frozenset(np.flatnonzero(self._leq[:, j]).tolist()) for j in range(len(self)))

    @cached_property
    def up_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(np.flatnonzero(self._leq[i, :]).tolist()) for i in range(len(self)))

    @cached_property
    def hasse_edges(self) -> Tuple[Tuple[int, int], ...]:
        """Covering pairs i < j of the strict order (no k strictly between)."""
        strict = self._leq & ~self._leq.T
        edges = []
        n = len(self)
        for i in range(n):
            for j in range(n):
                if not strict[i, j]:
                    continue
                if not any(strict[i, k] and strict[k, j] for k in range(n)):
                    edges.append((i, j))
        return tuple(edges)

    @cached_property
    def relation_pairs(self) -> Tuple[Tuple[int, int], ...]:
        """All comparable pairs (i, j) with i <= j, reflexive pairs included."""
        rows, cols = np.nonzero(self._leq)
        return tuple(zip(rows.tolist(), cols.tolist()))

    @cached_property
    def is_t0(self) -> bool:
        off = self._leq & self._leq.T
        return bool(np.array_equal(off, np.eye(len(self), dtype=bool)))

    @cached_property
    def linear_extension(self) -> Tuple[int, ...]:
        """Points sorted so that i appears before j whenever i < j strictly."""
        return tuple(sorted(range(len(self)), key=lambda i: (len(self.down_sets[i]), i)))

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinSpace):
            return NotImplemented
        return self._labels == other._labels and np.array_equal(self._leq, other._leq)

    def __hash__(self) -> int:
        return hash((self._labels, self._leq.tobytes()))

    def __repr__(self) -> str:
        return f"FinSpace({len(self)} points: {', '.join(map(str, self._labels[:8]))}{'…' if len(self) > 8 else ''})"

    # -- constructions on a single space -------------------------------------

    def subspace(self, indices: Iterable[int]) -> "FinSpace":
        """Subspace on the given points, kept in increasing index order."""
        idx = sorted(set(indices))
        sub = self._leq[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=bool)
        return FinSpace([self._labels[i] for i in idx], sub)

    def relabel(self, mapping: Mapping[Label, Label]) -> "FinSpace":
        return FinSpace([mapping.get(lab, lab) for lab in self._labels], self._leq, self._generators)

    def down(self, indices: Iterable[int]) -> FrozenSet[int]:
        out: set = set()
        for i in indices:
            out |= self.down_sets[i]
        return frozenset(out)

    def is_down_set(self, indices: Iterable[int]) -> bool:
        s = set(indices)
        return all(self.down_sets[i] <= s for i in s)


# -- constructors ------------------------------------------------------------


def from_relations(labels: Sequence[Label], generators: Iterable[Tuple[Label, Label]]) -> FinSpace:
    """Space whose preorder is the reflexive-transitive closure of `generators`."""
    labels = list(labels)
    seen: Dict[Label, int] = {}
    for i, lab in enumerate(labels):
        if lab in seen:
            raise DuplicateLabelError(f"duplicate point label {lab!r}")
        seen[lab] = i
    gens: List[Tuple[int, int]] = []
    g = nx.DiGraph()
    g.add_nodes_from(range(len(labels)))
    for x, y in generators:
        if x not in seen or y not in seen:
            missing = x if x not in seen else y
            raise UnknownPointError(f"generator ({x!r}, {y!r}) uses unknown point {missing!r}")
        gens.append((seen[x], seen[y]))
        g.add_edge(seen[x], seen[y])
    closure = nx.transitive_closure(g, reflexive=True)
    n = len(labels)
    matrix = np.zeros((n, n), dtype=bool)
    for i, j in closure.edges:
        matrix[i, j] = True
    np.fill_diagonal(matrix, True)
    return FinSpace(labels, matrix, gens)


def empty_space() -> FinSpace:
    return FinSpace([], np.zeros((0, 0), dtype=bool))


def discrete(labels: Sequence[Label]) -> FinSpace:
    return FinSpace(labels, np.eye(len(labels), dtype=bool))


def indiscrete(labels: Sequence[Label]) -> FinSpace:
    return FinSpace(labels, np.ones((len(labels), len(labels)), dtype=bool))


def chain(labels: Sequence[Label]) -> FinSpace:
    """Totally ordered space labels[0] < labels[1] < ..."""
    n = len(labels)
    return FinSpace(labels, np.triu(np.ones((n, n), dtype=bool)))


def space_from_basis(labels: Sequence[Label], basis: Iterable[Iterable[Label]]) -> FinSpace:
    """Finite space whose topology is generated by `basis`.

    x <= y iff every basis set containing y also contains x.
    """
    labels = list(labels)
    pos = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    members = np.zeros((0, n), dtype=bool)
    rows = []
    for block in basis:
        row = np.zeros(n, dtype=bool)
        for lab in block:
            row[pos[lab]] = True
        rows.append(row)
    if rows:
        members = np.vstack(rows)
    # leq[x, y] <=> for all B: B[y] -> B[x]
    leq = np.ones((n, n), dtype=bool)
    for row in members:
        leq &= ~(row[np.newaxis, :] & ~row[:, np.newaxis])
    return FinSpace(labels, leq)


# -- topology ----------------------------------------------------------------


def minimal_open(X: FinSpace, x: Label) -> FrozenSet[Label]:
    """U_x = {y : y <= x}."""
    i = X.index(x)
    return frozenset(X.label(j) for j in X.down_sets[i])


def is_open(X: FinSpace, S: Iterable[Label]) -> bool:
    """True iff S is a down-set of the specialization preorder."""
    idx = [X.index(s) for s in S]
    return X.is_down_set(idx)


def open_sets(X: FinSpace) -> List[FrozenSet[Label]]:
    """Every open set of X, enumerated deterministically (by size, then labels)."""
    order = X.linear_extension
    found: List[FrozenSet[int]] = []

    def grow(k: int, current: FrozenSet[int]) -> None:
        if k == len(order):
            found.append(current)
            return
        i = order[k]
        grow(k + 1, current)
        # i may join only when everything strictly below it is already in
        if X.down_sets[i] - {j for j in X.down_sets[i] if X.equivalent(i, j)} <= current:
            cls = frozenset(j for j in X.down_sets[i] if X.equivalent(i, j))
            if min(cls, key=order.index) == i:
                grow(k + 1, current | cls)

    grow(0, frozenset())
    result = sorted(
        (frozenset(X.label(i) for i in s) for s in set(found)),
        key=lambda s: (len(s), sorted(label_key(x) for x in s)),
    )
    logger.debug(f"open_sets: {len(result)} opens on {len(X)} points")
    return result


def connected_components(X: FinSpace) -> List[FrozenSet[Label]]:
    """Components of the comparability graph, ordered by least member index."""
    g = nx.Graph()
    g.add_nodes_from(range(len(X)))
    g.add_edges_from((i, j) for i, j in X.relation_pairs if i != j)
    comps = sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])
    return [frozenset(X.label(i) for i in c) for c in comps]


def component_indices(X: FinSpace) -> List[List[int]]:
    g = nx.Graph()
    g.add_nodes_from(range(len(X)))
    g.add_edges_from((i, j) for i, j in X.relation_pairs if i != j)
    return sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])


# -- continuous maps ---------------------------------------------------------


class ContinuousMap:
    """Order-preserving function between two FinSpaces, stored by point index."""

    __slots__ = ("dom", "cod", "image")

    def __init__(self, dom: FinSpace, cod: FinSpace, image: Sequence[int], check: bool = True):
        image = tuple(int(v) for v in image)
        if len(image) != len(dom):
            raise NotContinuousError(f"map has {len(image)} values for a domain of {len(dom)} points")
        if image and (min(image) < 0 or max(image) >= len(cod)):
            raise NotContinuousError("map value outside the codomain")
        self.dom = dom
        self.cod = cod
        self.image = image
        if check:
            bad = self.first_order_violation()
            if bad is not None:
                i, j = bad
                raise NotContinuousError(
                    f"not continuous: {dom.label(i)!r} <= {dom.label(j)!r} but "
                    f"{cod.label(image[i])!r} is not <= {cod.label(image[j])!r}",
                    pair=(dom.label(i), dom.label(j)),
                )

    @classmethod
    def from_labels(cls, dom: FinSpace, cod: FinSpace, mapping: Mapping[Label, Label]) -> "ContinuousMap":
        missing = [x for x in dom.labels if x not in mapping]
        if missing:
            raise UnknownPointError(f"map undefined on {missing[0]!r}")
        return cls(dom, cod, [cod.index(mapping[x]) for x in dom.labels])

    @classmethod
    def identity(cls, X: FinSpace) -> "ContinuousMap":
        return cls(X, X, range(len(X)), check=False)

    @classmethod
    def constant(cls, dom: FinSpace, cod: FinSpace, y: int) -> "ContinuousMap":
        return cls(dom, cod, [y] * len(dom), check=False)

    def first_order_violation(self) -> Optional[Tuple[int, int]]:
        if not self.image:
            return None
        img = np.asarray(self.image)
        ok = self.cod.leq[np.ix_(img, img)] | ~self.dom.leq
        if ok.all():
            return None
        i, j = np.argwhere(~ok)[0]
        return int(i), int(j)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def apply_label(self, x: Label) -> Label:
        return self.cod.label(self.image[self.dom.index(x)])

    def as_label_dict(self) -> Dict[Label, Label]:
        return {self.dom.label(i): self.cod.label(v) for i, v in enumerate(self.image)}

    def compose(self, first: "ContinuousMap") -> "ContinuousMap":
        """self ∘ first."""
        if first.cod is not self.dom and first.cod != self.dom:
            raise NotContinuousError("composition of maps with mismatched spaces")
        return ContinuousMap(first.dom, self.cod, [self.image[v] for v in first.image], check=False)

    def preimage(self, S: Iterable[int]) -> FrozenSet[int]:
        s = set(S)
        return frozenset(i for i, v in enumerate(self.image) if v in s)

    @property
    def is_bijective(self) -> bool:
        return len(self.dom) == len(self.cod) and len(set(self.image)) == len(self.image)

    @property
    def is_homeomorphism(self) -> bool:
        """Bijective with order-preserving inverse (an order isomorphism)."""
        if not self.is_bijective:
            return False
        if not self.image:
            return True
        img = np.asarray(self.image)
        return bool(np.array_equal(self.cod.leq[np.ix_(img, img)], self.dom.leq))

    def inverse(self) -> "ContinuousMap":
        if not self.is_homeomorphism:
            raise NotContinuousError("inverse requested for a map that is not a homeomorphism")
        inv = [0] * len(self.image)
        for i, v in enumerate(self.image):
            inv[v] = i
        return ContinuousMap(self.cod, self.dom, inv, check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContinuousMap):
            return NotImplemented
        return self.image == other.image and self.dom == other.dom and self.cod == other.cod

    def __hash__(self) -> int:
        return hash((self.image, len(self.dom), len(self.cod)))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.dom.label(i)}→{self.cod.label(v)}" for i, v in enumerate(self.image))
        return f"ContinuousMap({pairs})"


def compose(g: ContinuousMap, f: ContinuousMap) -> ContinuousMap:
    """g ∘ f."""
    return g.compose(f)


def pointwise_leq(f: ContinuousMap, g: ContinuousMap) -> bool:
    """f(x) <= g(x) for every x."""
    return all(f.cod.le(a, b) for a, b in zip(f.image, g.image))


def require_open(X: FinSpace, S: Iterable[Label]) -> FrozenSet[int]:
    """Index set of S, raising NotOpenError unless S is open."""
    idx = frozenset(X.index(s) for s in S)
    if not X.is_down_set(idx):
        raise NotOpenError(f"{sorted(map(str, S))} is not open")
    return idx
