"""
FIBRA - Kolmogorov quotient.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import networkx as nx
import numpy as np

from finspace.space import ContinuousMap, FinSpace, label_key


@dataclass(frozen=True)
class KolmogorovQuotient:
    """T0 quotient K X of a finite space with its quotient map sigma: X -> K X."""

    source: FinSpace
    quotient: FinSpace
    sigma: ContinuousMap

    @property
    def classes(self) -> List[Tuple[int, ...]]:
        """Members (source indices, ascending) of each quotient point."""
        out: List[List[int]] = [[] for _ in range(len(self.quotient))]
        for i, c in enumerate(self.sigma.image):
            out[c].append(i)
        return [tuple(members) for members in out]

    def fiber(self, q: int) -> Tuple[int, ...]:
        """sigma^-1(q)."""
        return tuple(i for i, c in enumerate(self.sigma.image) if c == q)


@lru_cache(maxsize=4096)
def kolmogorov(X: FinSpace) -> KolmogorovQuotient:
    """Identify mutually comparable points.

    Classes are ordered by their first member index; each class is labelled by
    its lexicographically least member label.
    """
    g = nx.DiGraph()
    g.add_nodes_from(range(len(X)))
    g.add_edges_from((i, j) for i, j in X.relation_pairs if i != j)
    comps = sorted((sorted(c) for c in nx.strongly_connected_components(g)), key=lambda c: c[0])
    image = [0] * len(X)
    for k, members in enumerate(comps):
        for i in members:
            image[i] = k
    reps = [c[0] for c in comps]
    labels = [min((X.label(i) for i in c), key=label_key) for c in comps]
    leq = X.leq[np.ix_(reps, reps)] if reps else np.zeros((0, 0), dtype=bool)
    quotient = FinSpace(labels, leq)
    return KolmogorovQuotient(X, quotient, ContinuousMap(X, quotient, image, check=False))


def kolmogorov_map(f: ContinuousMap) -> ContinuousMap:
    """K(f): K(dom) -> K(cod), the unique map with K(f) sigma_dom = sigma_cod f."""
    kd = kolmogorov(f.dom)
    kc = kolmogorov(f.cod)
    image = [0] * len(kd.quotient)
    for i, c in enumerate(kd.sigma.image):
        image[c] = kc.sigma.image[f.image[i]]
    return ContinuousMap(kd.quotient, kc.quotient, image, check=False)
