"""
FIBRA - When is the projection of ∫D a fiber bundle with fiber F.
"""

from dataclasses import dataclass, field
from typing import List

from finspace.homeo import find_homeomorphism
from finspace.kolmogorov import kolmogorov, kolmogorov_map
from finspace.space import FinSpace
from functorcat.functor import TopFunctor, require_functor


@dataclass
class CharacterizationReport:
    """The three conditions checked separately, with the first failure of each."""

    classes_invertible: bool = True
    fibers_match: bool = True
    class_sizes_match: bool = True
    problems: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.classes_invertible and self.fibers_match and self.class_sizes_match


def characterize(D: TopFunctor, F: FinSpace) -> CharacterizationReport:
    """(a) K D is morphism-inverting, (b) every D(b) is homeomorphic to F,
    (c) each K D(b1 <= b2) matches class sizes: |sigma^-1(K D(b1<=b2)^-1(y))| = |sigma^-1(y)|.
    """
    require_functor(D)
    B = D.base
    report = CharacterizationReport()
    for b in range(len(B)):
        if find_homeomorphism(D.objects[b], F) is None:
            report.fibers_match = False
            report.problems.append(f"D({B.label(b)}) is not homeomorphic to F")
            break
    for (i, j), arrow in D.arrows.items():
        k_arrow = kolmogorov_map(arrow)
        if report.classes_invertible and not k_arrow.is_homeomorphism:
            report.classes_invertible = False
            report.problems.append(f"K D({B.label(i)} <= {B.label(j)}) is not a homeomorphism")
        if report.class_sizes_match:
            src, dst = kolmogorov(arrow.dom), kolmogorov(arrow.cod)
            for y in range(len(dst.quotient)):
                pre = [c for c, v in enumerate(k_arrow.image) if v == y]
                above = sum(len(src.fiber(c)) for c in pre)
                if above != len(dst.fiber(y)):
                    report.class_sizes_match = False
                    report.problems.append(
                        f"over {B.label(i)} <= {B.label(j)} the class of {dst.quotient.label(y)!r} "
                        f"has {len(dst.fiber(y))} points but {above} map onto it"
                    )
                    break
    return report


def characterization_check(D: TopFunctor, F: FinSpace) -> bool:
    return characterize(D, F).holds
