"""
FIBRA - Enumeration of functors from a finite base into Aut(F).

A functor B -> Aut(F) is fixed by its values on the T0 quotient's covering
edges (subject to every chain agreeing) and by a gauge g(r, a) from each class
root r to the other members a of its class.
"""

from collections import deque
from itertools import product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from loguru import logger

from core.budget import SearchBudget
from finspace.kolmogorov import kolmogorov
from finspace.space import FinSpace, component_indices
from functorcat.aut import AutGroup
from functorcat.functor import Pair, TopFunctor, require_functor

GroupAssignment = Dict[Pair, int]


def spanning_edges(Q: FinSpace) -> Set[Pair]:
    """Covering edges of a BFS spanning forest rooted at each component's least point."""
    neighbours: Dict[int, List[Tuple[int, Pair]]] = {i: [] for i in range(len(Q))}
    for a, b in Q.hasse_edges:
        neighbours[a].append((b, (a, b)))
        neighbours[b].append((a, (a, b)))
    tree: Set[Pair] = set()
    seen: Set[int] = set()
    for comp in component_indices(Q):
        root = comp[0]
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, edge in sorted(neighbours[u]):
                if v not in seen:
                    seen.add(v)
                    tree.add(edge)
                    queue.append(v)
    return tree


def gauge_multiplier(B: FinSpace, G: AutGroup) -> int:
    """Number of functors represented by each gauge-fixed one: |G|^(|B| - #components)."""
    return len(G) ** (len(B) - len(component_indices(B)))


def _quotient_functors(
    Q: FinSpace, G: AutGroup, fixed: Set[Pair], budget: Optional[SearchBudget]
) -> Iterator[Dict[Pair, int]]:
    """Functors of the poset Q into G, as a table on all comparable pairs."""
    order = Q.linear_extension
    covers_into: Dict[int, List[int]] = {t: sorted(a for a, b in Q.hasse_edges if b == t) for t in order}
    below: Dict[int, List[int]] = {t: sorted(Q.down_sets[t] - {t}) for t in order}
    val: Dict[Pair, int] = {(t, t): G.identity for t in order}

    def assign(k: int) -> Iterator[Dict[Pair, int]]:
        if k == len(order):
            yield dict(val)
            return
        t = order[k]
        ins = covers_into[t]
        choices = [[G.identity] if (u, t) in fixed else range(len(G)) for u in ins]
        for pick in cartesian(*choices):
            if budget is not None:
                budget.tick()
            edge = dict(zip(ins, pick))
            ok = True
            fresh: Dict[Pair, int] = {}
            for s in below[t]:
                value = None
                for u in ins:
                    if not Q.le(s, u):
                        continue
                    via = G.mul(edge[u], val[(s, u)])
                    if value is None:
                        value = via
                    elif via != value:
                        ok = False
                        break
                if not ok:
                    break
                fresh[(s, t)] = value
            if not ok:
                continue
            val.update(fresh)
            yield from assign(k + 1)
            for p in fresh:
                del val[p]

    yield from assign(0)


def enumerate_group_assignments(
    B: FinSpace, G: AutGroup, gauge_fixed: bool = False, budget: Optional[SearchBudget] = None
) -> Iterator[GroupAssignment]:
    """Functors B -> G as group-element indices on every comparable pair of B."""
    kq = kolmogorov(B)
    Q = kq.quotient
    sigma = kq.sigma.image
    classes = kq.classes
    fixed = spanning_edges(Q) if gauge_fixed else set()
    roots = {q: members[0] for q, members in enumerate(classes)}
    others = [a for a in range(len(B)) if roots[sigma[a]] != a]
    gauges: Sequence[Sequence[int]] = [[G.identity] if gauge_fixed else range(len(G)) for _ in others]
    for qval in _quotient_functors(Q, G, fixed, budget):
        for pick in cartesian(*gauges):
            w = [G.identity] * len(B)
            for a, g in zip(others, pick):
                w[a] = g
            table: GroupAssignment = {}
            for i, j in B.relation_pairs:
                q = qval[(sigma[i], sigma[j])]
                table[(i, j)] = G.mul(G.mul(w[j], q), G.inverse[w[i]])
            yield table


def functor_from_assignment(B: FinSpace, G: AutGroup, table: GroupAssignment) -> TopFunctor:
    """The functor iota C with C given by group indices on comparable pairs."""
    return TopFunctor(B, [G.space] * len(B), {p: G.elements[g] for p, g in table.items()})


def enumerate_functors_to_aut(
    B: FinSpace, G: AutGroup, gauge_fixed: bool = False, budget: Optional[SearchBudget] = None
) -> List[TopFunctor]:
    """Every functor B -> Aut(F), deterministically ordered.

    With gauge_fixed=True only functors that are the identity on a spanning
    forest (and inside each indistinguishability class) are produced; each stands
    for `gauge_multiplier(B, G)` functors of the full enumeration.
    """
    out = [functor_from_assignment(B, G, t) for t in enumerate_group_assignments(B, G, gauge_fixed, budget)]
    logger.info(
        f"enumerate_functors_to_aut: {len(out)} functors over {len(B)} points into |G|={len(G)}"
        f"{' (gauge fixed)' if gauge_fixed else ''}"
    )
    return out


def assignment_of(D: TopFunctor, G: AutGroup) -> GroupAssignment:
    """Group-element indices of a functor into Aut(F)."""
    return {p: G.index_of(a) for p, a in D.arrows.items()}


def regauge(B: FinSpace, G: AutGroup, table: GroupAssignment, eta: Sequence[int]) -> GroupAssignment:
    """eta_j g(i, j) eta_i^-1 on every pair; a naturally isomorphic functor."""
    return {(i, j): G.mul(G.mul(eta[j], g), G.inverse[eta[i]]) for (i, j), g in table.items()}


def functor_into_group(B: FinSpace, G: AutGroup, edge_elements: Dict[Tuple, int]) -> TopFunctor:
    """iota C from group elements on generating pairs (label pairs); the rest is derived."""
    arrows = {(B.index(x), B.index(y)): G.elements[g] for (x, y), g in edge_elements.items()}
    return require_functor(TopFunctor.from_generators(B, [G.space] * len(B), arrows))
