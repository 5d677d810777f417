"""Multi-sorted first-order syntax."""

from .ast import (
    CLASS,
    SET,
    And,
    Apply,
    Atom,
    Binary,
    ClassTerm,
    Equal,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Neg,
    Node,
    Or,
    Quantifier,
    Term,
    Variable,
    children,
    class_member,
    conj,
    connective_count,
    disj,
    exists,
    forall,
    is_atomic,
    member,
    subformulas,
    var,
)
from .ops import (
    ArityError,
    all_var_names,
    alpha_equal,
    alpha_key,
    bexists,
    bforall,
    bound_of,
    free_vars,
    free_vars_ordered,
    fresh_var,
    instantiate_collection,
    instantiate_comprehension,
    is_bounded,
    is_closed,
    ord_formula,
    relativize,
    rename_bound,
    sort_of,
    substitute,
)
from .parser import ParseError, parse, parse_formula, parse_term, sexpr_to_formula, sexpr_to_term
from .printer import to_human, to_sexpr
from .signature import (
    BUILTIN,
    C,
    C_PRIME,
    C_STAR,
    S,
    S_PRIME,
    S_STAR,
    S_V,
    Signature,
    SortError,
    propositional,
)


def print_expr(e) -> str:
    """Canonical s-expression text of a term or formula."""
    return to_sexpr(e)
