"""Direct recursive truth, written independently of the compiled evaluator.

No memoization, no guard solvers: quantifiers run over the whole carrier.
Used as a test oracle.
"""

from __future__ import annotations

from ..syntax.ast import And, Apply, Atom, Equal, Exists, Forall, Iff, Implies, Neg, Or, Variable
from .structure import UnassignedVariable


def direct_term(st, t, a):
    if isinstance(t, Variable):
        if t not in a:
            raise UnassignedVariable(t.name)
        return a[t]
    if isinstance(t, Apply):
        return st.apply(t.op, [direct_term(st, s, a) for s in t.args])
    raise TypeError(t)


def direct_truth(st, f, a) -> bool:
    a = dict(a)
    if isinstance(f, Atom):
        return st.holds(f.pred, [direct_term(st, t, a) for t in f.args])
    if isinstance(f, Equal):
        return direct_term(st, f.left, a) == direct_term(st, f.right, a)
    if isinstance(f, Neg):
        return not direct_truth(st, f.body, a)
    if isinstance(f, And):
        return direct_truth(st, f.left, a) and direct_truth(st, f.right, a)
    if isinstance(f, Or):
        return direct_truth(st, f.left, a) or direct_truth(st, f.right, a)
    if isinstance(f, Implies):
        return (not direct_truth(st, f.left, a)) or direct_truth(st, f.right, a)
    if isinstance(f, Iff):
        return direct_truth(st, f.left, a) == direct_truth(st, f.right, a)
    if isinstance(f, Exists):
        return any(direct_truth(st, f.body, {**a, f.var: d}) for d in st.carrier(f.var.sort))
    if isinstance(f, Forall):
        return all(direct_truth(st, f.body, {**a, f.var: d}) for d in st.carrier(f.var.sort))
    raise TypeError(f)
