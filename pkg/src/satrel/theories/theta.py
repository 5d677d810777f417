"""The sentence θ′ built from a bounded re-axiomatization D, and its instances θ^φ."""

from __future__ import annotations

from dataclasses import dataclass

from ..encoding import encode, phi_class
from ..hf import HfSet, kpair
from ..semantics import build_valuation
from ..syntax.ast import CLASS, SET, And, Atom, ClassTerm, Equal, Exists, Forall, Formula, Implies, Neg, Variable
from ..syntax.ast import disj, children
from ..syntax.ops import free_vars, is_bounded, rename_bound, substitute
from ..syntax.signature import S as SIG_S
from ..util import deep_recursion
from .objlang import Lang, class_var


class ShapeError(ValueError):
    """The sentence is not of the shape produced by build_theta_prime."""


@dataclass(frozen=True)
class ReAxiomatization:
    """x ∈ Θ iff ∃y∈HF D(x, y), with every quantifier of D bounded."""

    D: Formula
    x: Variable = Variable("x")
    y: Variable = Variable("y")

    def __post_init__(self):
        with deep_recursion():
            if not is_bounded(self.D):
                raise ValueError("D must have bounded quantifiers only")
            extra = free_vars(self.D) - {self.x, self.y}
        if extra:
            raise ValueError(f"D has free variables besides x, y: {sorted(v.name for v in extra)}")

    def spliced(self, x, y) -> Formula:
        with deep_recursion():
            d = rename_bound(self.D, [x, y])
            return substitute(d, {self.x: x, self.y: y})


def never() -> ReAxiomatization:
    """D that holds of nothing."""
    x = Variable("x")
    return ReAxiomatization(Neg(Equal(x, x)))


def enumerating(*sentences) -> ReAxiomatization:
    """D(x, y) saying that x is the code of one of the given sentences."""
    x = Variable("x")
    L = Lang("d")
    with deep_recursion():
        D = disj(*[L.dag_const(x, encode(s)) for s in sentences])
        return ReAxiomatization(D)


def build_theta_prime(R: ReAxiomatization) -> Formula:
    """∀S ∀n∈ω ∀x∈V_n (∃y∈V_n D(x,y) ∧ S is the Φ^s_n-satisfaction relation for V → ⊨^S x)."""
    L = Lang()
    S = class_var("S")
    n, x, y = L.var(), L.var(), L.var()
    with deep_recursion():
        enumerated = Exists(y, And(L.rank_below(y, n), R.spliced(x, y)))
        rel = L.sat_relation(S, lambda psi: L.rank_below(psi, n))
        body = Implies(And(enumerated, rel), L.true_in(S, x))
        inner = Forall(x, Implies(L.rank_below(x, n), body))
        return Forall(S, Forall(n, Implies(L.natural(n), inner)))


def instantiate_theta_phi(theta_prime: Formula, phi: Formula) -> Formula:
    """Drop ∀S and replace each τ ∈ S by φ(τ)."""
    if not (isinstance(theta_prime, Forall) and theta_prime.var.sort == CLASS):
        raise ShapeError("θ′ must start with a universal class quantifier")
    S = theta_prime.var
    fv = sorted(free_vars(phi), key=lambda v: v.name)
    if len(fv) > 1 or any(v.sort != SET for v in fv):
        raise ShapeError("φ must have at most one free set variable")
    if _has_class(phi):
        raise ShapeError("φ must be an s-formula")
    v = fv[0] if fv else None

    def walk(f):
        if isinstance(f, Atom):
            if f.pred == "class-in":
                if f.args[1] != S:
                    raise ShapeError(f"unexpected class atom {f}")
                tau = f.args[0]
                return phi if v is None else substitute(phi, {v: tau})
            if _has_class(f):
                raise ShapeError(f"unexpected class symbol in {f}")
            return f
        if isinstance(f, Equal):
            if _has_class(f):
                raise ShapeError(f"class identity {f} is not template-shaped")
            return f
        if isinstance(f, Neg):
            return Neg(walk(f.body))
        if isinstance(f, (Forall, Exists)):
            if f.var.sort != SET:
                raise ShapeError("nested class quantifier")
            return type(f)(f.var, walk(f.body))
        return type(f)(walk(f.left), walk(f.right))

    with deep_recursion():
        return walk(theta_prime.body)


def _has_class(e) -> bool:
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Variable):
            if x.sort != SET:
                return True
            continue
        if isinstance(x, ClassTerm):
            return True
        if isinstance(x, Atom) and x.pred == "class-in":
            return True
        if isinstance(x, (Forall, Exists)) and x.var.sort != SET:
            return True
        stack.extend(children(x))
    return False


def is_class_free(f) -> bool:
    with deep_recursion():
        return not _has_class(f)


def assignment_code(assignment) -> HfSet:
    return HfSet.of([kpair(encode(v), a) for v, a in assignment.items()])


def satisfaction_table_formula(st, n: int, v: Variable = Variable("v")) -> Formula:
    """φ(v) true exactly of the pairs ⟨ψ, A⟩ in the Φ^s_n-satisfaction relation of st.

    st must have hereditarily finite sets as elements.  The formula is a
    disjunction of definitions of the codes; with no entries it is v ≠ v.
    """
    rel = build_valuation(st, phi_class(n, SIG_S)).satisfaction_relation()
    L = Lang("t")
    entries = sorted({kpair(encode(f), assignment_code(a)) for f, a in rel.pairs()})
    if not entries:
        return Neg(Equal(v, v))
    with deep_recursion():
        return disj(*[L.dag_const(v, e) for e in entries])


__all__ = [
    "ReAxiomatization",
    "ShapeError",
    "build_theta_prime",
    "enumerating",
    "instantiate_theta_phi",
    "is_class_free",
    "never",
    "satisfaction_table_formula",
]
