"""Finite 2-categories, path 2-groupoids of covers, descent objects and the
transport functors they glue to."""
from .twocat import (
    TwoCategoryTable, TwoFunctor, PseudoNat, Modification, EquivalenceBundle, Report, Violation,
    TypingError, ConstructionError, CapabilityError, check_two_category, check_two_functor,
    check_pseudonatural, check_modification,
)
from .instances import (
    CrossedModule, MonoidalTable, two_group_from_crossed_module, delooping, brute_force_algebras,
)
from .base import Computad, CoverSpec, PathGroupoid, BASES, bundled_base
from .codescent import Codescent, SectionChoice, Section
from .descent import (
    DescentContext, DescentObject, DescentOneMor, DescentTwoMor, Refinement,
    check_descent_object, check_descent_1mor, check_descent_2mor, restrict,
)
from .transport import (
    TrivializedFunctor, TransportQuery, extract, reconstruct, rho, eta, comparison, holonomy,
    pairing_R, random_trivialized_functor, two_group_context,
)

__all__ = [
    "TwoCategoryTable", "TwoFunctor", "PseudoNat", "Modification", "EquivalenceBundle",
    "Report", "Violation", "TypingError", "ConstructionError", "CapabilityError",
    "check_two_category", "check_two_functor", "check_pseudonatural", "check_modification",
    "CrossedModule", "MonoidalTable", "two_group_from_crossed_module", "delooping",
    "brute_force_algebras", "Computad", "CoverSpec", "PathGroupoid", "BASES",
    "bundled_base", "Codescent", "SectionChoice", "Section", "DescentContext",
    "DescentObject", "DescentOneMor", "DescentTwoMor", "Refinement", "check_descent_object",
    "check_descent_1mor", "check_descent_2mor", "restrict", "TrivializedFunctor",
    "TransportQuery", "extract", "reconstruct", "rho", "eta", "comparison", "holonomy",
    "pairing_R", "random_trivialized_functor", "two_group_context",
]

__version__ = "0.1.0"
