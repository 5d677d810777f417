"""Subvaluations, J-interpretations and sequent evaluation.

A subvaluation is a partial map from (formula, assignment) to truth values
that obeys only the monotone clauses: a disjunction may be marked true as
soon as one disjunct is marked true, but marking it false needs both
disjuncts marked false; dually for the other connectives and for
quantifiers over the carrier.

Entries are stored under a normal form in which every variable is replaced
by a placeholder for its value and every term without bound variables is
replaced by the placeholder of its value, so (φ(x), x ↦ e) and (φ(t), {})
share a key whenever t denotes e.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..syntax.ast import (
    And,
    Apply,
    Atom,
    Binary,
    ClassTerm,
    Equal,
    Exists,
    Forall,
    Iff,
    Implies,
    Neg,
    Or,
    Quantifier,
    Variable,
)
from ..syntax.ops import alpha_key, free_vars
from ..semantics.evaluate import evaluate
from ..semantics.structure import Assignment, Structure, UnassignedVariable


def _slot(st: Structure, sort: str, value) -> Variable:
    return Variable(f"@{st.carrier(sort).index(value)}", sort)


def _slot_value(st: Structure, v: Variable):
    return st.carrier(v.sort)[int(v.name[1:])]


def _is_slot(t) -> bool:
    return isinstance(t, Variable) and t.name.startswith("@")


def normalize(st: Structure, f, assignment) -> object:
    """Placeholder normal form of (f, assignment)."""

    def term(t, bound):
        if isinstance(t, Variable):
            if t in bound or _is_slot(t):
                return t
            if t not in assignment:
                raise UnassignedVariable(t.name)
            return _slot(st, t.sort, assignment[t])
        if isinstance(t, Apply):
            args = [term(a, bound) for a in t.args]
            if all(_is_slot(a) for a in args):
                return _slot(st, "set", st.apply(t.op, [_slot_value(st, a) for a in args]))
            return Apply(t.op, args)
        if isinstance(t, ClassTerm):
            return ClassTerm(t.var, form(t.body, bound | {t.var}))
        raise TypeError(t)

    def form(g, bound):
        if isinstance(g, Atom):
            return Atom(g.pred, [term(a, bound) for a in g.args])
        if isinstance(g, Equal):
            return Equal(term(g.left, bound), term(g.right, bound))
        if isinstance(g, Neg):
            return Neg(form(g.body, bound))
        if isinstance(g, Binary):
            return type(g)(form(g.left, bound), form(g.right, bound))
        if isinstance(g, Quantifier):
            return type(g)(g.var, form(g.body, bound | {g.var}))
        raise TypeError(g)

    return alpha_key(form(f, frozenset()))


@dataclass
class Subvaluation:
    structure: Structure
    table: dict = field(default_factory=dict)

    def set(self, f, assignment, value: bool):
        self.table[normalize(self.structure, f, assignment)] = bool(value)

    def get(self, f, assignment=None):
        """True, False, or None when unassigned."""
        return self.table.get(normalize(self.structure, f, assignment or {}))

    def __len__(self):
        return len(self.table)


@dataclass
class ClauseVerdict:
    ok: bool
    certificate: str | None = None

    def __bool__(self):
        return self.ok


def _atom_truth(st, g) -> bool:
    if isinstance(g, Equal):
        return g.left == g.right
    return st.holds(g.pred, [_slot_value(st, a) for a in g.args])


def _instances(st, q):
    for e in st.carrier(q.var.sort):
        yield normalize(st, q.body, {q.var: e})


def check_subvaluation(st: Structure, V: Subvaluation) -> ClauseVerdict:
    """Does every assigned entry obey the monotone clauses?"""
    from ..syntax.printer import to_sexpr

    tab = V.table

    def val(g):
        return tab.get(alpha_key(g))

    for g, v in tab.items():
        bad = None
        if isinstance(g, (Atom, Equal)):
            if _atom_truth(st, g) != v:
                bad = "atomic value disagrees with the structure"
        elif isinstance(g, Neg):
            if val(g.body) is not (not v):
                bad = "negation needs the opposite value on its body"
        elif isinstance(g, And):
            l, r = val(g.left), val(g.right)
            ok = (l is True and r is True) if v else (l is False or r is False)
            bad = None if ok else "conjunction clause"
        elif isinstance(g, Or):
            l, r = val(g.left), val(g.right)
            ok = (l is True or r is True) if v else (l is False and r is False)
            bad = None if ok else "disjunction clause"
        elif isinstance(g, Implies):
            l, r = val(g.left), val(g.right)
            ok = (l is False or r is True) if v else (l is True and r is False)
            bad = None if ok else "implication clause"
        elif isinstance(g, Iff):
            l, r = val(g.left), val(g.right)
            ok = l is not None and r is not None and ((l == r) == v)
            bad = None if ok else "biconditional clause"
        elif isinstance(g, Forall):
            vals = [tab.get(k) for k in _instances(st, g)]
            ok = all(x is True for x in vals) if v else any(x is False for x in vals)
            bad = None if ok else "universal clause"
        elif isinstance(g, Exists):
            vals = [tab.get(k) for k in _instances(st, g)]
            ok = any(x is True for x in vals) if v else all(x is False for x in vals)
            bad = None if ok else "existential clause"
        else:
            bad = "not a formula"
        if bad:
            return ClauseVerdict(False, f"{to_sexpr(g)} marked {str(v).lower()}: {bad}")
    return ClauseVerdict(True)


def interpretation_satisfies(st: Structure, V: Subvaluation, sequent, assignment) -> bool:
    """A J-interpretation satisfies J unless it makes all of Γ true and all of Δ false."""
    all_g = all(V.get(f, assignment) is True for f in sequent.ante)
    all_d = all(V.get(f, assignment) is False for f in sequent.succ)
    return not (all_g and all_d)


def eval_sequent(st: Structure, sequent, assignment=None) -> bool:
    """False iff every antecedent formula holds and every succedent formula fails."""
    a = Assignment(assignment or {})
    need = sequent.free_vars()
    missing = need - set(a)
    if missing:
        raise UnassignedVariable(", ".join(sorted(v.name for v in missing)))
    if not all(evaluate(st, f, a.restrict(free_vars(f))) for f in sequent.ante):
        return True
    return any(evaluate(st, f, a.restrict(free_vars(f))) for f in sequent.succ)
