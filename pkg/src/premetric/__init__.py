"""Pre-metric groups (A, q), the Picard group P(A, q) and its crossed module over O(A, q)."""

from .abelian_groups import (QZ, FinAbGroup, GroupHom, Subgroup, cyclic, dual_hom,
                             enumerate_automorphisms, enumerate_homs, enumerate_subgroups,
                             hom_compose, hom_new, qz)
from .abelian_cohomology import (AbelianCocycle, ModuleCochain, beta_from_gamma, cohomologous,
                                 solve_gamma, standard_cocycle, trace_form,
                                 validate_abelian_cocycle)
from .catalog import FormSpec, builtin_catalog, parse_form
from .center import (CenterForm, alpha_f, center_form, embeddings, enumerate_trivializable,
                     lift_conjugation_check, picard_of_alpha, restrict_to_rev)
from .config import Limits, limits
from .errors import (InvalidCocycle, InvalidForm, ParseError, PropertyViolation, SizeGuard,
                     WellDefinednessError)
from .module_categories import (ModuleCategoryDatum, act_on_modcat, enumerate_module_cats,
                                from_picard, is_invertible_modcat, partial_alexei, to_picard)
from .picard import (CrossedModuleReport, PicardElement, act, cokernel_partial, diamond,
                     enumerate_picard, is_picard_element, kernel_partial, paper_predictions,
                     partial, picard_inverse, verify_crossed_module)
from .quadratic_forms import (QuadraticForm, evaluate, form_new, is_nondegenerate,
                              orthogonal_complement, orthogonal_group, radical, restrict,
                              sigma_tilde)
from .snf import smith_normal_form, solve_linear_qz

__version__ = "0.1.0"

__all__ = [
    "AbelianCocycle", "act", "act_on_modcat", "alpha_f", "beta_from_gamma", "builtin_catalog",
    "center_form", "CenterForm", "cohomologous", "cokernel_partial", "CrossedModuleReport",
    "cyclic", "diamond", "dual_hom", "embeddings", "enumerate_automorphisms", "enumerate_homs",
    "enumerate_module_cats", "enumerate_picard", "enumerate_subgroups", "enumerate_trivializable",
    "evaluate", "FinAbGroup", "form_new", "FormSpec", "from_picard", "GroupHom", "hom_compose",
    "hom_new", "InvalidCocycle", "InvalidForm", "is_invertible_modcat", "is_nondegenerate",
    "is_picard_element", "kernel_partial", "lift_conjugation_check", "Limits", "limits",
    "ModuleCategoryDatum", "ModuleCochain", "orthogonal_complement", "orthogonal_group",
    "paper_predictions", "parse_form", "ParseError", "partial", "partial_alexei", "picard_inverse",
    "picard_of_alpha", "PicardElement", "PropertyViolation", "QuadraticForm", "QZ", "qz",
    "radical", "restrict", "restrict_to_rev", "sigma_tilde", "SizeGuard", "smith_normal_form",
    "solve_gamma", "solve_linear_qz", "standard_cocycle", "Subgroup", "to_picard", "trace_form",
    "validate_abelian_cocycle", "verify_crossed_module", "WellDefinednessError", "__version__",
]
