"""BM groups: presentations, normal forms, homomorphisms and abelianization."""

from bmrel.groups.abelian import AbelianInvariants, abelianization, classify_by_abelianization
from bmrel.groups.homomorphism import (
    GeneratorMap,
    IsoCertificate,
    check_homomorphism,
    load_certificate,
    shipped_certificate,
    verify_isomorphism,
)
from bmrel.groups.presentation import BMPresentation, normal_form, presentation_from_relation
from bmrel.groups.presets import PRESET_NAMES, preset_presentation

__all__ = [
    "AbelianInvariants",
    "BMPresentation",
    "GeneratorMap",
    "IsoCertificate",
    "PRESET_NAMES",
    "abelianization",
    "check_homomorphism",
    "classify_by_abelianization",
    "load_certificate",
    "normal_form",
    "preset_presentation",
    "presentation_from_relation",
    "shipped_certificate",
    "verify_isomorphism",
]
