"""LK and cut-free LK⁻: proofs, checking, cut elimination and proof search."""

from .core import CheckResult, Proof, Sequent, check_proof, is_instance_of, subformula_property
from .cutelim import NotAProof, StepBudgetExceeded, eliminate_cuts
from .eqlogic import eq_valid
from .internal import reshape
from .io import (
    header_signature,
    parse_sequent,
    proof_to_sexpr,
    read_proof_file,
    read_sequent_file,
    sequent_to_sexpr,
    sexpr_to_proof,
    sexpr_to_sequent,
)
from .propositional import PropDecider, PropTable
from .search import CounterInterpretation, NotFoundWithinDepth, derivable, prove_lkminus
from .subval import Subvaluation, check_subvaluation, eval_sequent, interpretation_satisfies, normalize

__all__ = [
    "CheckResult",
    "CounterInterpretation",
    "NotAProof",
    "NotFoundWithinDepth",
    "Proof",
    "PropDecider",
    "PropTable",
    "Sequent",
    "StepBudgetExceeded",
    "Subvaluation",
    "check_proof",
    "check_subvaluation",
    "derivable",
    "eliminate_cuts",
    "eq_valid",
    "eval_sequent",
    "header_signature",
    "interpretation_satisfies",
    "is_instance_of",
    "normalize",
    "parse_sequent",
    "proof_to_sexpr",
    "prove_lkminus",
    "read_proof_file",
    "reshape",
    "read_sequent_file",
    "sequent_to_sexpr",
    "sexpr_to_proof",
    "sexpr_to_sequent",
    "subformula_property",
]
