"""Finite structures, valuations, satisfaction relations and ⊨*."""

from .evaluate import Evaluator, eval_term, evaluate, flatten_and
from .oracle import direct_term, direct_truth
from .structure import (
    EMPTY_ASSIGNMENT,
    Assignment,
    NotASubstructure,
    ResourceLimit,
    Structure,
    UnassignedVariable,
    all_assignments,
    check_substructure,
    hf_membership_structure,
    is_substructure,
    membership_structure,
    standard_hf_structure,
)
from .valuation import (
    DEFAULT_LIMIT,
    LazyValuation,
    SatRelation,
    ValuationFunction,
    Verdict,
    agree_on_common_domain,
    build_valuation,
    clause_value,
    failing_sentences,
    is_partial_valuation,
    is_phi_elementary,
    merge_valuations,
    models_star,
    models_star_theory,
    subclose,
    table_size,
)
