"""Exact computations in the N=1 Ramond superalgebra.

Structure constants and super-Jacobi checks, PBW straightening in the
enveloping algebra, modules over the subalgebra B, the induced modules
Ind(V) and finite verifiers for their simplicity and annihilator theory.
"""

from .algebra import NEVEU_SCHWARZ, RAMOND, AlgebraSpec, DomainError, G, Generator, L, LinearCombo, bracket, check_super_jacobi
from .bmodules import (
    HighOrderWhittakerModule,
    LaurentFraction,
    SolvableModule,
    SubalgebraSpec,
    WhittakerModule,
    bmodule_axiom_check,
    solvable_xy,
    whittaker_by_induction,
)
from .induced import (
    InducedElement,
    annihilator_space,
    deg,
    induced_act,
    nilpotency_probe,
    restricted_bound,
    simplicity_probe,
    supp_deg,
)
from .parsing import ParseError, format_induced, parse_element, parse_induced
from .pbw import SVector, cmp_principal, cmp_revlex, depth_D, monomial_of, normal_order, svector_sub, weight_W
from .scalars import ScalarPoly

__all__ = [
    "AlgebraSpec",
    "DomainError",
    "G",
    "Generator",
    "HighOrderWhittakerModule",
    "InducedElement",
    "L",
    "LaurentFraction",
    "LinearCombo",
    "NEVEU_SCHWARZ",
    "ParseError",
    "RAMOND",
    "SVector",
    "ScalarPoly",
    "SolvableModule",
    "SubalgebraSpec",
    "WhittakerModule",
    "annihilator_space",
    "bmodule_axiom_check",
    "bracket",
    "check_super_jacobi",
    "cmp_principal",
    "cmp_revlex",
    "deg",
    "depth_D",
    "format_induced",
    "induced_act",
    "monomial_of",
    "nilpotency_probe",
    "normal_order",
    "parse_element",
    "parse_induced",
    "restricted_bound",
    "simplicity_probe",
    "solvable_xy",
    "supp_deg",
    "svector_sub",
    "weight_W",
    "whittaker_by_induction",
]
