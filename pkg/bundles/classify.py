"""
FIBRA - Classification of fiber bundles with a given fiber over a finite base.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

from loguru import logger
from networkx.utils import UnionFind

from core.budget import SearchBudget, ensure_budget
from core.config import settings
from core.errors import BudgetExceededError, ClassificationInconclusive
from finspace.space import FinSpace
from functorcat.aut import AutGroup, aut_group
from functorcat.enumerate import enumerate_functors_to_aut, gauge_multiplier
from functorcat.functor import TopFunctor
from functorcat.transform import natural_iso
from bundles.bundle import FiberBundle, grothendieck_bundle
from bundles.iso import bundle_iso


@dataclass
class BundleClass:
    """One isomorphism class: representative functor, its bundle, and how many enumerated functors fall in it."""

    functor: TopFunctor
    bundle: Optional[FiberBundle]
    size: int
    functor_classes: int = 1


@dataclass
class ClassTable:
    base: FinSpace
    fiber: FinSpace
    group: AutGroup
    classes: List[BundleClass] = field(default_factory=list)
    total_functors: int = 0
    inconclusive: bool = False

    def __len__(self) -> int:
        return len(self.classes)


def _first_match(
    candidate: TopFunctor, reps: List[TopFunctor], budget: SearchBudget, workers: int
) -> Optional[int]:
    if workers <= 1 or len(reps) < 2:
        for k, rep in enumerate(reps):
            if natural_iso(rep, candidate, budget) is not None:
                return k
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        found = list(pool.map(lambda rep: natural_iso(rep, candidate, budget) is not None, reps))
    return next((k for k, ok in enumerate(found) if ok), None)


def classify(
    B: FinSpace,
    F: FinSpace,
    budget: Optional[SearchBudget] = None,
    workers: Optional[int] = None,
) -> ClassTable:
    """Isomorphism classes of bundles over B with fiber F.

    Functors B -> Aut(F) are enumerated up to gauge and partitioned by natural
    isomorphism. For a T0 fiber these classes are the bundle classes; otherwise
    classes whose Grothendieck bundles are isomorphic are merged.
    """
    budget = ensure_budget(budget, "classify")
    workers = workers or settings.CLASSIFY_WORKERS
    G = aut_group(F)
    table = ClassTable(base=B, fiber=F, group=G)
    multiplier = gauge_multiplier(B, G)
    reps: List[TopFunctor] = []
    counts: List[int] = []
    try:
        functors = enumerate_functors_to_aut(B, G, gauge_fixed=True, budget=budget)
        table.total_functors = len(functors) * multiplier
        for D in functors:
            k = _first_match(D, reps, budget, workers)
            if k is None:
                reps.append(D)
                counts.append(1)
            else:
                counts[k] += 1
        logger.info(f"classify: {table.total_functors} functors, {len(reps)} natural-isomorphism classes")

        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            bundles = list(pool.map(lambda D: grothendieck_bundle(D, F, budget), reps))

        groups: List[List[int]] = [[k] for k in range(len(reps))]
        if not F.is_t0:
            uf = UnionFind(range(len(reps)))
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    if uf[i] == uf[j]:
                        continue
                    if bundle_iso(bundles[i], bundles[j], budget) is not None:
                        uf.union(i, j)
            groups = sorted((sorted(s) for s in uf.to_sets()), key=lambda s: s[0])
            logger.info(f"classify: fiber not T0, {len(reps)} functor classes merge into {len(groups)}")
        for members in groups:
            first = members[0]
            table.classes.append(
                BundleClass(
                    functor=reps[first],
                    bundle=bundles[first],
                    size=sum(counts[k] for k in members) * multiplier,
                    functor_classes=len(members),
                )
            )
    except BudgetExceededError as exc:
        table.inconclusive = True
        if not table.classes:
            table.classes = [
                BundleClass(functor=D, bundle=None, size=c * multiplier) for D, c in zip(reps, counts)
            ]
        logger.warning(f"classify: {exc}")
        raise ClassificationInconclusive(str(exc), partial=table, nodes=exc.nodes) from exc
    return table
