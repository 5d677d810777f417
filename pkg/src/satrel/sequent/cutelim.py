"""Cut elimination.

The input LK proof is translated into the set calculus of ``internal``,
where a cut is the context-sharing (mix-like) rule.  Cuts are removed
bottom-up starting from the uppermost ones: ``reduce`` takes two cut-free
proofs and a cut formula and permutes the cut upward until the formula is
principal on both sides, then replaces it by cuts on its immediate
subformulas.  The result is translated back to LK (without cut) and its root
is reshaped to the original endsequent.
"""

from __future__ import annotations

from ..syntax.ast import Formula
from ..util import deep_recursion
from .core import Proof, check_proof
from .internal import (
    INode,
    ISeq,
    Fresh,
    LEFT,
    RIGHT,
    ax_valid,
    export_proof,
    import_proof,
    instance,
    proof_var_names,
    psubst,
    side_formulas,
)


class StepBudgetExceeded(RuntimeError):
    pass


class NotAProof(ValueError):
    pass


class _Reducer:
    def __init__(self, budget: int, fresh: Fresh):
        self.budget = budget
        self.steps = 0
        self.fresh = fresh
        self.memo: dict = {}

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise StepBudgetExceeded(f"cut elimination exceeded {self.budget} steps")

    # -------------------------------------------------------------- driver

    def eliminate(self, d: INode) -> INode:
        memo: dict = {}

        def go(n):
            if id(n) in memo:
                return memo[id(n)][1]
            prems = tuple(go(p) for p in n.premises)
            if n.rule == "cut":
                out = self.reduce(n.principal, prems[0], prems[1])
            elif all(a is b for a, b in zip(prems, n.premises)):
                out = n
            else:
                out = n.with_(premises=prems)
            memo[id(n)] = (n, out)
            return out

        return go(d)

    # -------------------------------------------------------------- one cut

    def reduce(self, A: Formula, d1: INode, d2: INode) -> INode:
        """Cut-free proof of a subsequent of Γ1 ∪ (Γ2∖A) ⇒ (Δ1∖A) ∪ Δ2."""
        key = (A, id(d1), id(d2))
        hit = self.memo.get(key)
        if hit is not None:
            return hit[2]
        out = self._reduce(A, d1, d2)
        self.memo[key] = (d1, d2, out)
        return out

    def _reduce(self, A, d1, d2):
        self.tick()
        c1, c2 = d1.concl, d2.concl
        if A not in c1.succ or A in c2.succ:
            return d1
        if A not in c2.ante or A in c1.ante:
            return d2
        if d1.rule == "wk":
            return self.reduce(A, d1.premises[0], d2)
        if d2.rule == "wk":
            return self.reduce(A, d1, d2.premises[0])
        G = c1.ante | (c2.ante - {A})
        D = (c1.succ - {A}) | c2.succ
        if d1.rule == "ax" and d2.rule == "ax":
            assert ax_valid(G, D), "axiom cut closure failed"
            return INode("ax", ISeq(G, D))
        if d1.rule == "ax":
            rest = c1.succ - {A}
            if ax_valid(c1.ante, rest):
                return INode("ax", ISeq(c1.ante, rest))
            return self.permute(A, d2, d1, G, D, right=True)
        if d2.rule == "ax":
            rest = c2.ante - {A}
            if ax_valid(rest, c2.succ):
                return INode("ax", ISeq(rest, c2.succ))
            return self.permute(A, d1, d2, G, D, right=False)
        if not (d1.rule in RIGHT and d1.principal == A):
            return self.permute(A, d1, d2, G, D, right=False)
        if not (d2.rule in LEFT and d2.principal == A):
            return self.permute(A, d2, d1, G, D, right=True)
        return self.principal(A, d1, d2)

    def _avoid(self, d: INode, other: ISeq) -> INode:
        """Rename d's eigenvariable if it occurs free in other."""
        if d.eigen is None or d.eigen not in other.free_vars():
            return d
        new = self.fresh.var(d.eigen.sort)
        prems = tuple(psubst(p, d.eigen, new, self.fresh) for p in d.premises)
        return d.with_(premises=prems, eigen=new)

    def permute(self, A, d, other, G, D, right: bool) -> INode:
        """Push the cut into the premises of d (d1 if not right, else d2)."""
        d = self._avoid(d, other.concl)
        if right:
            prems = tuple(self.reduce(A, other, p) for p in d.premises)
        else:
            prems = tuple(self.reduce(A, p, other) for p in d.premises)
        if d.rule == "ax":  # pragma: no cover - handled by the caller
            raise AssertionError
        return INode(d.rule, ISeq(G, D), prems, d.principal, d.term, d.eigen)

    def principal(self, A, d1, d2) -> INode:
        d1 = self._avoid(d1, d2.concl)
        d2 = self._avoid(d2, d1.concl)
        # remove the retained copies of A from the premises first
        p = [self.reduce(A, q, d2) for q in d1.premises]
        q = [self.reduce(A, d1, r) for r in d2.premises]
        r = d1.rule
        if r == "notR":
            return self.reduce(A.body, q[0], p[0])
        if r == "andR":
            return self.reduce(A.right, p[1], self.reduce(A.left, p[0], q[0]))
        if r == "orR":
            return self.reduce(A.right, self.reduce(A.left, p[0], q[0]), q[1])
        if r == "impR":
            return self.reduce(A.left, q[0], self.reduce(A.right, p[0], q[1]))
        if r == "iffR":
            B, C = A.left, A.right
            x = self.reduce(B, q[0], p[0])  # Γ ⇒ Δ, C
            y = self.reduce(C, x, q[1])  # B, Γ ⇒ Δ
            z = self.reduce(C, q[0], p[1])  # Γ ⇒ Δ, B
            return self.reduce(B, z, y)
        if r == "allR":
            t = d2.term
            return self.reduce(instance(A, t), psubst(p[0], d1.eigen, t, self.fresh), q[0])
        if r == "exR":
            t = d1.term
            return self.reduce(instance(A, t), p[0], psubst(q[0], d2.eigen, t, self.fresh))
        raise AssertionError(f"unexpected principal pair {r}/{d2.rule}")


def eliminate_internal(d: INode, budget: int = 10**6) -> INode:
    red = _Reducer(budget, Fresh(proof_var_names(d)))
    return red.eliminate(d)


def eliminate_cuts(proof: Proof, budget: int = 10**6, check: bool = True) -> Proof:
    """A cut-free LK proof of exactly the same endsequent."""
    if check:
        verdict = check_proof(proof, "LK")
        if not verdict:
            raise NotAProof(verdict.certificate)
    if proof.is_cut_free():
        return proof
    cut_formulas = [n.premises[0].concl.succ[-1] for n in proof.nodes() if n.rule == "cut"]
    with deep_recursion():  # proofs from search can be over a thousand nodes deep
        d = eliminate_internal(import_proof(proof), budget)
        return export_proof(d, proof.concl, extra=cut_formulas)


__all__ = ["eliminate_cuts", "eliminate_internal", "StepBudgetExceeded", "NotAProof", "side_formulas"]
