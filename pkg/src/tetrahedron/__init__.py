"""Tetrahedron equations from obstruction rewriting: derivation, higher
Bruhat order B(4,2), sweep geometry and numeric verification."""

__version__ = "0.1.0"

from .bruhat import bruhat_classes, enumerate_admissible, inversion_set, is_admissible, packets, subsets
from .derive import derive_all
from .equations import (
    classic_form,
    exhaustive_scan,
    generate_equations,
    geometric_form,
    normalize_to_shorthand,
    starting_configs,
)
from .tensors import ComplexTensor, GlobalSpaceBasis, ModelBundle, embed, evaluate, residual, stilde_from_unitarity
from .words import OpLetter, SpaceLabel, apply_rule, canonical_q_form, match_rules, opword, rword

__all__ = [
    "__version__",
    "bruhat_classes", "enumerate_admissible", "inversion_set", "is_admissible", "packets", "subsets",
    "derive_all", "classic_form", "exhaustive_scan", "generate_equations", "geometric_form",
    "normalize_to_shorthand", "starting_configs",
    "ComplexTensor", "GlobalSpaceBasis", "ModelBundle", "embed", "evaluate", "residual",
    "stilde_from_unitarity",
    "OpLetter", "SpaceLabel", "apply_rule", "canonical_q_form", "match_rules", "opword", "rword",
]
