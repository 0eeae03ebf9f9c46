"""Exact subgroup-lattice invariants and structure tests for small finite groups."""

from .arith import (
    AbundanceClass,
    Factorization,
    abundance_class,
    divisor_sigma,
    factorize,
    search_open_problem,
    sigma1_cyclic,
)
from .classifiers import (
    Bound,
    StructuralProfile,
    Verdict,
    bound_verdict,
    has_cyclic_maximal_subgroup,
    is_abelian,
    is_cyclic,
    is_nilpotent,
    is_p_group,
    is_solvable,
    is_supersolvable,
    structural_profile,
    unique_nonnormal_maximal_profile,
)
from .constructions import (
    ActionMode,
    CatalogEntry,
    FamilyMember,
    build,
    catalog,
    family_gn,
    pxp_rtimes_zq,
    zp_rtimes_zn,
)
from .errors import (
    ActionError,
    ParseError,
    PreconditionError,
    Sigma1Error,
    SizeLimitError,
    ValidationError,
)
from .groups import (
    Automorphism,
    Group,
    are_isomorphic,
    close_generators,
    direct_product,
    quotient_group,
    semidirect_product,
)
from .invariants import (
    Sigma1Breakdown,
    cyclic_subgroup_sum,
    derived_series,
    lower_central_series,
    nonnormal_maximal_class_sum,
    sigma1,
    sigma1_breakdown,
)
from .lattice import (
    Subgroup,
    SubgroupClass,
    SubgroupLattice,
    all_subgroups,
    conjugacy_classes,
    is_normal,
    maximal_subgroups,
    normalizer,
    sylow_subgroups,
)
from .verify import Report, population, run_scan, run_suites

__version__ = "0.1.0"

__all__ = [
    "AbundanceClass",
    "ActionError",
    "ActionMode",
    "Automorphism",
    "Bound",
    "CatalogEntry",
    "Factorization",
    "FamilyMember",
    "Group",
    "ParseError",
    "PreconditionError",
    "Report",
    "Sigma1Breakdown",
    "Sigma1Error",
    "SizeLimitError",
    "StructuralProfile",
    "Subgroup",
    "SubgroupClass",
    "SubgroupLattice",
    "ValidationError",
    "Verdict",
    "abundance_class",
    "all_subgroups",
    "are_isomorphic",
    "bound_verdict",
    "build",
    "catalog",
    "close_generators",
    "conjugacy_classes",
    "cyclic_subgroup_sum",
    "derived_series",
    "direct_product",
    "divisor_sigma",
    "factorize",
    "family_gn",
    "has_cyclic_maximal_subgroup",
    "is_abelian",
    "is_cyclic",
    "is_nilpotent",
    "is_normal",
    "is_p_group",
    "is_solvable",
    "is_supersolvable",
    "lower_central_series",
    "maximal_subgroups",
    "nonnormal_maximal_class_sum",
    "normalizer",
    "population",
    "pxp_rtimes_zq",
    "quotient_group",
    "run_scan",
    "run_suites",
    "search_open_problem",
    "semidirect_product",
    "sigma1",
    "sigma1_breakdown",
    "sigma1_cyclic",
    "structural_profile",
    "sylow_subgroups",
    "unique_nonnormal_maximal_profile",
    "zp_rtimes_zn",
]
