"""θ′ and θ^φ, elimination of class terms, and the theory library."""

from .library import (
    AXIOMS,
    CLASS_AXIOMS,
    Schema,
    axiom,
    generic_filter,
    item,
    partial_order,
    read_theory,
    theory_library,
    v_models_star_zf,
    zf_code,
)
from .objlang import Lang, class_var
from .pstar import (
    NotTemplateProof,
    QuantifiedClassVariable,
    class_separation,
    eliminate_class_terms,
    eliminate_with_report,
    is_comprehension_instance,
    membership_axiom,
)
from .theta import (
    ReAxiomatization,
    ShapeError,
    build_theta_prime,
    enumerating,
    instantiate_theta_phi,
    is_class_free,
    never,
    satisfaction_table_formula,
)

__all__ = [
    "AXIOMS",
    "CLASS_AXIOMS",
    "Lang",
    "NotTemplateProof",
    "QuantifiedClassVariable",
    "ReAxiomatization",
    "Schema",
    "ShapeError",
    "axiom",
    "build_theta_prime",
    "class_separation",
    "class_var",
    "eliminate_class_terms",
    "eliminate_with_report",
    "enumerating",
    "generic_filter",
    "instantiate_theta_phi",
    "is_class_free",
    "is_comprehension_instance",
    "item",
    "membership_axiom",
    "never",
    "partial_order",
    "read_theory",
    "satisfaction_table_formula",
    "theory_library",
    "v_models_star_zf",
    "zf_code",
]
