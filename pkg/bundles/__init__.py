"""
FIBRA - Fiber bundles over finite spaces: verification, canonical representation, isomorphism, classification.
"""

from bundles.automorphisms import AutomorphismReport, trivial_automorphisms
from bundles.bundle import (
    FiberBundle,
    LocalChart,
    attach_witnesses,
    grothendieck_bundle,
    local_chart,
    make_bundle,
    require_verified,
    trivial_bundle,
    verify_bundle,
    witness_problems,
    with_witnesses,
)
from bundles.canonical import CanonicalRep, canonical_iso_witness, canonical_representation, delta
from bundles.characterize import CharacterizationReport, characterization_check, characterize
from bundles.classify import BundleClass, ClassTable, classify
from bundles.iso import bundle_iso, over_base_isomorphism
from bundles.pullback import pullback_bundle, pullback_square

__all__ = [
    "FiberBundle",
    "LocalChart",
    "CanonicalRep",
    "ClassTable",
    "BundleClass",
    "CharacterizationReport",
    "AutomorphismReport",
    "make_bundle",
    "local_chart",
    "require_verified",
    "witness_problems",
    "attach_witnesses",
    "with_witnesses",
    "trivial_bundle",
    "verify_bundle",
    "grothendieck_bundle",
    "characterize",
    "characterization_check",
    "canonical_representation",
    "canonical_iso_witness",
    "delta",
    "bundle_iso",
    "over_base_isomorphism",
    "classify",
    "pullback_bundle",
    "pullback_square",
    "trivial_automorphisms",
]
