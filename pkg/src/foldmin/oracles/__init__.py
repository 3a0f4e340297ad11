"""Family-specific word-problem and relator-detection engines."""

from .hit import RelatorHit, TorsionClass
from .coxeter import (
    CoxeterOracle,
    alternating_components,
    coxeter_dehn_reduce,
    coxeter_is_trivial,
    coxeter_torsion_classify,
    relator_path_property,
    weakly_dehn_reduced,
)
from .onerel import (
    OneRelatorOracle,
    PeriodicityReport,
    newman_scan,
    one_relator_is_trivial,
    one_relator_torsion_classify,
    periodicity_check,
    relator_rotations,
)
from .artin import (
    DihedralGarside,
    DihedralOracle,
    IDENTITY_NF,
    SearchBounds,
    Simple,
    artin_dihedral_is_trivial,
    artin_dihedral_normal_form,
    artin_relator_search,
)

__all__ = [
    "RelatorHit",
    "TorsionClass",
    "CoxeterOracle",
    "alternating_components",
    "coxeter_dehn_reduce",
    "coxeter_is_trivial",
    "coxeter_torsion_classify",
    "relator_path_property",
    "weakly_dehn_reduced",
    "OneRelatorOracle",
    "PeriodicityReport",
    "newman_scan",
    "one_relator_is_trivial",
    "one_relator_torsion_classify",
    "periodicity_check",
    "relator_rotations",
    "DihedralGarside",
    "DihedralOracle",
    "IDENTITY_NF",
    "SearchBounds",
    "Simple",
    "artin_dihedral_is_trivial",
    "artin_dihedral_normal_form",
    "artin_relator_search",
]
