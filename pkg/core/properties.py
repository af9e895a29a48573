"""
FIBRA - Randomized property checks.
Seeded oracles comparing independent computations on random functors.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger

from core.budget import SearchBudget, ensure_budget
from core.config import settings
from finspace.sampling import random_space
from functorcat.sampling import random_functor
from grothendieck.construction import basis_space, groth
from bundles.bundle import verify_bundle
from bundles.characterize import characterization_check


@dataclass
class PropertyReport:
    trials: int
    seed: int
    topology_mismatches: List[int] = field(default_factory=list)
    characterization_mismatches: List[int] = field(default_factory=list)
    bundles_seen: int = 0

    @property
    def ok(self) -> bool:
        return not self.topology_mismatches and not self.characterization_mismatches


def run_properties(
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
    max_base: Optional[int] = None,
    max_fiber: Optional[int] = None,
) -> PropertyReport:
    """For each trial draw a base and a functor, then check

    - the categorical order on ∫D equals the order generated by the J-basis;
    - characterization (a)(b)(c) with F = D(b0) agrees with direct verification.
    """
    trials = settings.PROPERTY_TRIALS if trials is None else trials
    seed = settings.DEFAULT_SEED if seed is None else seed
    max_base = max_base or settings.PROPERTY_MAX_BASE
    max_fiber = max_fiber or settings.PROPERTY_MAX_FIBER
    budget = ensure_budget(budget, "properties")
    rng = np.random.default_rng(seed)
    report = PropertyReport(trials=trials, seed=seed)
    for t in range(trials):
        B = random_space(rng, int(rng.integers(1, max_base + 1)), t0=bool(rng.integers(2)))
        D = random_functor(rng, B, max_fiber=max_fiber)
        G = groth(D)
        if G.space != basis_space(D):
            report.topology_mismatches.append(t)
            logger.warning(f"properties: trial {t} topology mismatch")
        F = D.objects[0]
        claimed = characterization_check(D, F)
        actual = verify_bundle(G.projection, F, budget) is not None
        report.bundles_seen += actual
        if claimed != actual:
            report.characterization_mismatches.append(t)
            logger.warning(f"properties: trial {t} characterization says {claimed}, verification says {actual}")
    logger.info(
        f"properties: {trials} trials from seed {seed}, {report.bundles_seen} bundles, "
        f"{len(report.topology_mismatches) + len(report.characterization_mismatches)} mismatches"
    )
    return report
