"""
FIBRA - Random functors for property checks.
"""

from typing import Dict, List, Optional

import numpy as np

from core.errors import BaseShapeError
from finspace.homeo import iter_homeomorphisms
from finspace.kolmogorov import kolmogorov
from finspace.sampling import random_map, random_space
from finspace.space import ContinuousMap, FinSpace
from functorcat.aut import AutGroup
from functorcat.enumerate import enumerate_group_assignments, functor_from_assignment, regauge
from functorcat.functor import Pair, TopFunctor


def _random_cocone(
    rng: np.random.Generator,
    Q: FinSpace,
    objects: List[FinSpace],
    arrows: Dict[Pair, ContinuousMap],
    t: int,
    attempts: int = 10,
) -> Dict[int, ContinuousMap]:
    """Maps D(s) -> D(t) for every s < t that commute with the arrows already chosen."""
    below = sorted(Q.down_sets[t] - {t})
    maximal = [m for m in below if not any(Q.le(m, u) and m != u for u in below)]
    target = objects[t]
    for attempt in range(attempts + 1):
        if attempt < attempts:
            top = {m: random_map(rng, objects[m], target) for m in maximal}
        else:
            y = int(rng.integers(len(target)))
            top = {m: ContinuousMap.constant(objects[m], target, y) for m in maximal}
        out: Dict[int, ContinuousMap] = {}
        ok = True
        for s in below:
            values = [top[m].compose(arrows[(s, m)]) for m in maximal if Q.le(s, m)]
            if any(v.image != values[0].image for v in values[1:]):
                ok = False
                break
            out[s] = values[0]
        if ok:
            return out
    raise AssertionError("constant cocone always commutes")


def random_functor(
    rng: np.random.Generator,
    B: FinSpace,
    max_fiber: int = 4,
    fiber: Optional[FinSpace] = None,
    t0_fibers: bool = False,
) -> TopFunctor:
    """A random functor over B.

    A functor is drawn on the T0 quotient of B (random objects, random cocones in
    a linear extension), pulled back to B and conjugated by random
    self-homeomorphisms of each object. With `fiber` given every object is that space.
    """
    kq = kolmogorov(B)
    Q = kq.quotient
    objects: List[FinSpace] = [FinSpace([], np.zeros((0, 0), dtype=bool))] * len(Q)
    arrows: Dict[Pair, ContinuousMap] = {}
    for t in Q.linear_extension:
        if fiber is not None:
            objects[t] = fiber
        else:
            size = int(rng.integers(1, max_fiber + 1))
            objects[t] = random_space(rng, size, t0=t0_fibers)
        arrows[(t, t)] = ContinuousMap.identity(objects[t])
        for s, m in _random_cocone(rng, Q, objects, arrows, t).items():
            arrows[(s, t)] = m
    pulled = TopFunctor(Q, objects, arrows).precompose(kq.sigma)
    twists = []
    for b in range(len(B)):
        autos = list(iter_homeomorphisms(pulled.objects[b], pulled.objects[b]))
        twists.append(autos[int(rng.integers(len(autos)))])
    conj = {
        (i, j): twists[j].compose(a).compose(twists[i].inverse()) for (i, j), a in pulled.arrows.items()
    }
    return TopFunctor(B, pulled.objects, conj)


def random_group_functor(rng: np.random.Generator, B: FinSpace, G: AutGroup) -> TopFunctor:
    """A functor B -> Aut(F) drawn uniformly: a random gauge-fixed functor, randomly regauged."""
    fixed = list(enumerate_group_assignments(B, G, gauge_fixed=True))
    table = fixed[int(rng.integers(len(fixed)))]
    eta = [int(rng.integers(len(G))) for _ in range(len(B))]
    return functor_from_assignment(B, G, regauge(B, G, table, eta))


def perturb_within_classes(rng: np.random.Generator, D: TopFunctor) -> TopFunctor:
    """A functor G with G(b) = D(b) and K G(b <= b2) = K D(b <= b2) for every pair.

    Each object gets a random retraction r onto one chosen point per
    indistinguishability class; G(b <= b2) = r_b2 D(b <= b2) for b < b2. Needs a T0 base.
    """
    B = D.base
    if not B.is_t0:
        raise BaseShapeError("perturbation within classes needs a T0 base")
    retractions = []
    for X in D.objects:
        kq = kolmogorov(X)
        pick = [members[int(rng.integers(len(members)))] for members in kq.classes]
        retractions.append(ContinuousMap(X, X, [pick[c] for c in kq.sigma.image], check=False))
    arrows = {
        (i, j): a if i == j else retractions[j].compose(a) for (i, j), a in D.arrows.items()
    }
    return TopFunctor(B, D.objects, arrows)
