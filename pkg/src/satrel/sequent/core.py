"""Sequents, LK proof trees and the proof checker.

The rule set is Gentzen's LK in Takeuti's presentation: sequents are ordered
sequences, weakening/contraction/exchange are explicit, principal formulas
sit at the left end of the antecedent and the right end of the succedent.
Two additions:

* ``iffL``/``iffR`` for the biconditional (Takeuti treats ↔ as defined);
* ``eq`` leaves: any sequent of atomic formulas valid in pure equality
  logic.  These are the identity axioms (reflexivity and substitution
  instances) and include ``A ⇒ A`` for atomic A.

Formulas are compared up to renaming of bound variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax.ast import (
    And,
    Equal,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Neg,
    Or,
    Variable,
    Atom,
)
from ..syntax.ops import alpha_key, free_vars, sort_of, substitute
from .eqlogic import eq_valid

STRUCTURAL = {"weakL", "weakR", "contrL", "contrR", "exchL", "exchR"}
LEAVES = {"init", "eq"}
RULES = LEAVES | STRUCTURAL | {
    "cut",
    "notL", "notR",
    "andL1", "andL2", "andR",
    "orL", "orR1", "orR2",
    "impL", "impR",
    "iffL", "iffR",
    "allL", "allR", "exL", "exR",
}


@dataclass(frozen=True)
class Sequent:
    ante: tuple
    succ: tuple

    def __init__(self, ante=(), succ=()):
        object.__setattr__(self, "ante", tuple(ante))
        object.__setattr__(self, "succ", tuple(succ))

    def formulas(self):
        return self.ante + self.succ

    def free_vars(self) -> frozenset:
        return frozenset().union(*(free_vars(f) for f in self.formulas())) if self.formulas() else frozenset()

    def __str__(self):
        from ..syntax.printer import to_human

        return f"{', '.join(map(to_human, self.ante))} ⇒ {', '.join(map(to_human, self.succ))}"


class Proof:
    """One inference: rule name, conclusion, premises, rule data.

    data keys: ``term`` (allL/exR), ``eigen`` (allR/exL), ``index``
    (exchange position i swaps i and i+1).
    """

    __slots__ = ("rule", "concl", "premises", "data")

    def __init__(self, rule: str, concl: Sequent, premises=(), data=None):
        self.rule = rule
        self.concl = concl
        self.premises = tuple(premises)
        self.data = dict(data or {})

    def size(self) -> int:
        n, stack = 0, [self]
        while stack:
            p = stack.pop()
            n += 1
            stack.extend(p.premises)
        return n

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def nodes(self):
        stack = [self]
        while stack:
            p = stack.pop()
            yield p
            stack.extend(reversed(p.premises))

    def count(self, rule: str) -> int:
        return sum(1 for n in self.nodes() if n.rule == rule)

    def is_cut_free(self) -> bool:
        return all(n.rule != "cut" for n in self.nodes())

    def __repr__(self):
        return f"Proof({self.rule}: {self.concl}; {len(self.premises)} premise(s))"


@dataclass
class CheckResult:
    ok: bool
    path: tuple = ()
    rule: str | None = None
    reason: str | None = None

    def __bool__(self):
        return self.ok

    @property
    def certificate(self):
        if self.ok:
            return None
        where = "/".join(map(str, self.path)) or "root"
        return f"node {where} ({self.rule}): {self.reason}"


class _Invalid(Exception):
    pass


def _k(f):
    return alpha_key(f)


def _same(a, b) -> bool:
    return a is b or _k(a) == _k(b)


def _same_seq(xs, ys) -> bool:
    return len(xs) == len(ys) and all(_same(a, b) for a, b in zip(xs, ys))


def _need(cond, msg):
    if not cond:
        raise _Invalid(msg)


def _arity(p: Proof, k: int):
    _need(len(p.premises) == k, f"expected {k} premise(s), found {len(p.premises)}")


def _instance(q, t):
    return substitute(q.body, {q.var: t})


def check_node(p: Proof, mode: str = "LK"):
    """Raise _Invalid if this single inference is not an instance of its rule."""
    r = p.rule
    c = p.concl
    _need(r in RULES, f"unknown rule {r!r}")
    _need(all(isinstance(f, Formula) for f in c.formulas()), "conclusion contains a non-formula")
    if r == "cut":
        _need(mode.upper() == "LK", "cut is not allowed in LK⁻")
    prem = [q.concl for q in p.premises]

    if r == "init":
        _arity(p, 0)
        _need(len(c.ante) == 1 and len(c.succ) == 1 and _same(c.ante[0], c.succ[0]), "not of the form D ⇒ D")
        return
    if r == "eq":
        _arity(p, 0)
        _need(all(isinstance(f, (Atom, Equal)) for f in c.formulas()), "identity axioms contain atomic formulas only")
        _need(eq_valid(c.ante, c.succ), "atomic sequent is not valid in equality logic")
        return

    if r in ("weakL", "weakR", "contrL", "contrR", "exchL", "exchR"):
        _arity(p, 1)
        (s,) = prem
        if r == "weakL":
            _need(len(c.ante) >= 1 and _same_seq(c.ante[1:], s.ante) and _same_seq(c.succ, s.succ), "bad weakening")
        elif r == "weakR":
            _need(len(c.succ) >= 1 and _same_seq(c.succ[:-1], s.succ) and _same_seq(c.ante, s.ante), "bad weakening")
        elif r == "contrL":
            _need(len(s.ante) >= 2 and _same(s.ante[0], s.ante[1]), "premise does not start with D, D")
            _need(_same_seq(c.ante, s.ante[1:]) and _same_seq(c.succ, s.succ), "bad contraction")
        elif r == "contrR":
            _need(len(s.succ) >= 2 and _same(s.succ[-1], s.succ[-2]), "premise does not end with D, D")
            _need(_same_seq(c.succ, s.succ[:-1]) and _same_seq(c.ante, s.ante), "bad contraction")
        else:
            i = p.data.get("index")
            side_c, side_s, other_c, other_s = (
                (c.ante, s.ante, c.succ, s.succ) if r == "exchL" else (c.succ, s.succ, c.ante, s.ante)
            )
            _need(isinstance(i, int) and 0 <= i < len(side_s) - 1, "bad exchange index")
            swapped = list(side_s)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            _need(_same_seq(side_c, swapped) and _same_seq(other_c, other_s), "bad exchange")
        return

    if r == "cut":
        _arity(p, 2)
        s1, s2 = prem
        _need(s1.succ and s2.ante, "cut premises lack the cut formula")
        d = s1.succ[-1]
        _need(_same(s2.ante[0], d), "cut formulas differ")
        _need(_same_seq(c.ante, s1.ante + s2.ante[1:]), "bad cut antecedent")
        _need(_same_seq(c.succ, s1.succ[:-1] + s2.succ), "bad cut succedent")
        return

    if r.endswith("L") or r in ("andL1", "andL2"):
        _need(c.ante, "no principal formula in the antecedent")
        pf, rest_a, rest_s = c.ante[0], c.ante[1:], c.succ
    else:
        _need(c.succ, "no principal formula in the succedent")
        pf, rest_a, rest_s = c.succ[-1], c.ante, c.succ[:-1]

    def same_ctx(s, ante_extra=(), succ_extra=()):
        _need(_same_seq(s.ante, tuple(ante_extra) + rest_a), "context mismatch in antecedent")
        _need(_same_seq(s.succ, rest_s + tuple(succ_extra)), "context mismatch in succedent")

    if r == "notL":
        _arity(p, 1)
        _need(isinstance(pf, Neg), "principal formula is not a negation")
        same_ctx(prem[0], succ_extra=[pf.body])
    elif r == "notR":
        _arity(p, 1)
        _need(isinstance(pf, Neg), "principal formula is not a negation")
        same_ctx(prem[0], ante_extra=[pf.body])
    elif r in ("andL1", "andL2"):
        _arity(p, 1)
        _need(isinstance(pf, And), "principal formula is not a conjunction")
        same_ctx(prem[0], ante_extra=[pf.left if r == "andL1" else pf.right])
    elif r == "andR":
        _arity(p, 2)
        _need(isinstance(pf, And), "principal formula is not a conjunction")
        same_ctx(prem[0], succ_extra=[pf.left])
        same_ctx(prem[1], succ_extra=[pf.right])
    elif r == "orL":
        _arity(p, 2)
        _need(isinstance(pf, Or), "principal formula is not a disjunction")
        same_ctx(prem[0], ante_extra=[pf.left])
        same_ctx(prem[1], ante_extra=[pf.right])
    elif r in ("orR1", "orR2"):
        _arity(p, 1)
        _need(isinstance(pf, Or), "principal formula is not a disjunction")
        same_ctx(prem[0], succ_extra=[pf.left if r == "orR1" else pf.right])
    elif r == "impL":
        _arity(p, 2)
        _need(isinstance(pf, Implies), "principal formula is not an implication")
        s1, s2 = prem
        _need(s1.succ and _same(s1.succ[-1], pf.left), "left premise must end with the antecedent C")
        _need(s2.ante and _same(s2.ante[0], pf.right), "right premise must start with the consequent D")
        _need(_same_seq(rest_a, s1.ante + s2.ante[1:]), "context mismatch in antecedent")
        _need(_same_seq(rest_s, s1.succ[:-1] + s2.succ), "context mismatch in succedent")
    elif r == "impR":
        _arity(p, 1)
        _need(isinstance(pf, Implies), "principal formula is not an implication")
        same_ctx(prem[0], ante_extra=[pf.left], succ_extra=[pf.right])
    elif r == "iffL":
        _arity(p, 2)
        _need(isinstance(pf, Iff), "principal formula is not a biconditional")
        same_ctx(prem[0], succ_extra=[pf.left, pf.right])
        same_ctx(prem[1], ante_extra=[pf.left, pf.right])
    elif r == "iffR":
        _arity(p, 2)
        _need(isinstance(pf, Iff), "principal formula is not a biconditional")
        same_ctx(prem[0], ante_extra=[pf.left], succ_extra=[pf.right])
        same_ctx(prem[1], ante_extra=[pf.right], succ_extra=[pf.left])
    elif r in ("allL", "exR"):
        _arity(p, 1)
        want = Forall if r == "allL" else Exists
        _need(isinstance(pf, want), f"principal formula is not {'universal' if want is Forall else 'existential'}")
        t = p.data.get("term")
        _need(t is not None, "missing instantiation term")
        _need(sort_of(t) == pf.var.sort, "instantiation term has the wrong sort")
        inst = _instance(pf, t)
        if r == "allL":
            same_ctx(prem[0], ante_extra=[inst])
        else:
            same_ctx(prem[0], succ_extra=[inst])
    elif r in ("allR", "exL"):
        _arity(p, 1)
        want = Forall if r == "allR" else Exists
        _need(isinstance(pf, want), f"principal formula is not {'universal' if want is Forall else 'existential'}")
        a = p.data.get("eigen")
        _need(isinstance(a, Variable) and a.sort == pf.var.sort, "missing or ill-sorted eigenvariable")
        _need(a not in c.free_vars(), f"eigenvariable {a.name} occurs free in the conclusion")
        inst = _instance(pf, a)
        if r == "allR":
            same_ctx(prem[0], succ_extra=[inst])
        else:
            same_ctx(prem[0], ante_extra=[inst])
    else:  # pragma: no cover - RULES guards this
        raise _Invalid(f"unhandled rule {r}")


def check_proof(proof: Proof, mode: str = "LK") -> CheckResult:
    """Check every inference; mode "LK" or "LKminus" (no cut)."""
    mode = mode.upper().replace("⁻", "MINUS")
    if mode not in ("LK", "LKMINUS"):
        raise ValueError(f"unknown mode {mode}")
    stack = [(proof, ())]
    while stack:
        p, path = stack.pop()
        try:
            check_node(p, "LK" if mode == "LK" else "LKMINUS")
        except _Invalid as exc:
            return CheckResult(False, path, p.rule, str(exc))
        for i in reversed(range(len(p.premises))):
            stack.append((p.premises[i], path + (i,)))
    return CheckResult(True)


# ------------------------------------------------------------ subformula property


def _match(pat, target, env: dict, bound: dict) -> bool:
    """One-way matching: free variables of pat may stand for any terms."""
    from ..syntax.ast import Apply, Binary, ClassTerm, Quantifier

    if isinstance(pat, Variable):
        if pat in bound:
            return target == bound[pat]
        if isinstance(target, Variable) and target in bound.values():
            return False
        if sort_of(target) != pat.sort:
            return False
        if pat in env:
            return env[pat] == target
        env[pat] = target
        return True
    if type(pat) is not type(target):
        return False
    if isinstance(pat, (Apply, Atom)):
        head_p = pat.op if isinstance(pat, Apply) else pat.pred
        head_t = target.op if isinstance(target, Apply) else target.pred
        return head_p == head_t and len(pat.args) == len(target.args) and all(
            _match(a, b, env, bound) for a, b in zip(pat.args, target.args)
        )
    if isinstance(pat, (Equal, Binary)):
        return _match(pat.left, target.left, env, bound) and _match(pat.right, target.right, env, bound)
    if isinstance(pat, Neg):
        return _match(pat.body, target.body, env, bound)
    if isinstance(pat, (Quantifier, ClassTerm)):
        if pat.var.sort != target.var.sort:
            return False
        inner = dict(bound)
        inner[pat.var] = target.var
        return _match(pat.body, target.body, env, inner)
    return False


def is_instance_of(pattern: Formula, target: Formula) -> bool:
    return _match(pattern, target, {}, {})


def subformula_property(proof: Proof) -> bool:
    """Every formula in the proof is an instance (free variables replaced by
    terms) of a subformula of a formula of the endsequent."""
    from ..syntax.ast import subformulas

    pats: list = []
    seen: set = set()
    for f in proof.concl.formulas():
        for g in subformulas(f):
            k = alpha_key(g)
            if k not in seen:
                seen.add(k)
                pats.append(g)
    ok_cache: dict = {}
    for node in proof.nodes():
        for f in node.concl.formulas():
            k = alpha_key(f)
            if k in ok_cache:
                if not ok_cache[k]:
                    return False
                continue
            ok = k in seen or any(is_instance_of(p, f) for p in pats)
            ok_cache[k] = ok
            if not ok:
                return False
    return True
