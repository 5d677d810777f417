"""Elimination of class terms from proofs in Levy's fragment (no class quantifiers).

Every atom τ ∈ {x | Φ(x)} is rewritten to Φ(τ), free class variables are
first replaced by the class term {x | x = x}, and class identities
T1 = T2 become ∀z (z ∈ T1 ↔ z ∈ T2) before the rewrite.  The rewrite
commutes with substitution, so every logical inference stays an instance of
its rule; identity leaves that stop being atomic are re-proved by search.
Premises that become logically valid (the membership axioms of class terms)
are discharged with a cut; the others (class Separation premises) become
s-sentences, instances of Comprehension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..sequent import Proof, Sequent, check_proof, prove_lkminus, reshape
from ..syntax.ast import (
    CLASS,
    SET,
    And,
    Atom,
    Binary,
    ClassTerm,
    Equal,
    Exists,
    Forall,
    Iff,
    Neg,
    Quantifier,
    Variable,
    class_member,
    member,
)
from ..syntax.ops import all_var_names, alpha_equal, fresh_var, instantiate_comprehension, substitute
from ..util import deep_recursion


class QuantifiedClassVariable(ValueError):
    """The proof quantifies over a class variable (outside the fragment)."""


class NotTemplateProof(ValueError):
    """The rewritten proof does not check (should not happen for fragment input)."""


UNIVERSE = ClassTerm(Variable("x"), Equal(Variable("x"), Variable("x")))


def has_class(e) -> bool:
    if isinstance(e, Variable):
        return e.sort != SET
    if isinstance(e, ClassTerm):
        return True
    if isinstance(e, Atom):
        return e.pred == "class-in" or any(has_class(a) for a in e.args)
    if isinstance(e, Equal):
        return has_class(e.left) or has_class(e.right)
    if isinstance(e, Neg):
        return has_class(e.body)
    if isinstance(e, Binary):
        return has_class(e.left) or has_class(e.right)
    if isinstance(e, Quantifier):
        return e.var.sort != SET or has_class(e.body)
    return any(has_class(a) for a in getattr(e, "args", ()))


def _check_fragment(f):
    if isinstance(f, Quantifier):
        if f.var.sort == CLASS:
            raise QuantifiedClassVariable(f"class quantifier over {f.var.name} in {f}")
        _check_fragment(f.body)
    elif isinstance(f, ClassTerm):
        _check_fragment(f.body)
    elif isinstance(f, Neg):
        _check_fragment(f.body)
    elif isinstance(f, Binary):
        _check_fragment(f.left)
        _check_fragment(f.right)
    elif isinstance(f, Equal):
        _check_fragment(f.left)
        _check_fragment(f.right)
    elif isinstance(f, Atom):
        for a in f.args:
            _check_fragment(a)


def _class_vars(f, out: set):
    if isinstance(f, Variable):
        if f.sort == CLASS:
            out.add(f)
    elif isinstance(f, ClassTerm):
        _class_vars(f.body, out)
    elif isinstance(f, (Atom,)):
        for a in f.args:
            _class_vars(a, out)
    elif isinstance(f, Equal):
        _class_vars(f.left, out)
        _class_vars(f.right, out)
    elif isinstance(f, Neg):
        _class_vars(f.body, out)
    elif isinstance(f, Binary):
        _class_vars(f.left, out)
        _class_vars(f.right, out)
    elif isinstance(f, Quantifier):
        _class_vars(f.body, out)


def rewrite(f):
    """The s-formula obtained by unfolding every class term in f."""
    if isinstance(f, Atom):
        if f.pred == "class-in":
            tau, T = f.args
            if not isinstance(T, ClassTerm):
                raise ValueError(f"class variable {T} must be replaced before rewriting")
            return substitute(rewrite(T.body), {T.var: tau})
        return f
    if isinstance(f, Equal):
        if isinstance(f.left, ClassTerm) or isinstance(f.right, ClassTerm):
            avoid = all_var_names(f)
            z = fresh_var(avoid, stem="z")
            return rewrite(Forall(z, Iff(class_member(z, f.left), class_member(z, f.right))))
        return f
    if isinstance(f, Neg):
        return Neg(rewrite(f.body))
    if isinstance(f, Binary):
        return type(f)(rewrite(f.left), rewrite(f.right))
    if isinstance(f, Quantifier):
        return type(f)(f.var, rewrite(f.body))
    raise TypeError(f"not a formula: {f!r}")


@dataclass
class Report:
    discharged: list = field(default_factory=list)  # valid premises cut away
    replaced: list = field(default_factory=list)  # (class premise, s-premise)
    reproved_leaves: int = 0


def _ground(proof: Proof):
    """Replace free class variables by the universal class term."""
    cv: set = set()
    for node in proof.nodes():
        for f in node.concl.formulas():
            _check_fragment(f)
            _class_vars(f, cv)
    if not cv:
        return proof
    b = {v: UNIVERSE for v in cv}

    def walk(p):
        c = Sequent([substitute(f, b) for f in p.concl.ante], [substitute(f, b) for f in p.concl.succ])
        return Proof(p.rule, c, [walk(q) for q in p.premises], dict(p.data))

    return walk(proof)


def _translate(proof: Proof, report: Report, depth: int):
    memo: dict = {}

    def walk(p):
        hit = memo.get(id(p))
        if hit is not None:
            return hit
        c = Sequent([rewrite(f) for f in p.concl.ante], [rewrite(f) for f in p.concl.succ])
        if p.rule == "eq" and not all(isinstance(f, (Atom, Equal)) for f in c.formulas()):
            q = prove_lkminus(c, depth)
            if not isinstance(q, Proof):
                raise NotTemplateProof(f"could not re-prove identity leaf {c}")
            report.reproved_leaves += 1
        else:
            q = Proof(p.rule, c, [walk(r) for r in p.premises], dict(p.data))
        memo[id(p)] = q
        return q

    return walk(proof)


def _discharge(proof: Proof, index: int, lemma: Proof) -> Proof:
    """Cut away the antecedent formula at ``index`` using a proof of ⇒ it."""
    c = proof.concl
    A = c.ante[index]
    rest = c.ante[:index] + c.ante[index + 1:]
    front = reshape(proof, Sequent((A,) + rest, c.succ))
    return Proof("cut", Sequent(rest, c.succ), [lemma, front])


def eliminate_with_report(proof: Proof, depth: int = 2, check: bool = True):
    with deep_recursion():
        grounded = _ground(proof)
        report = Report()
        out = _translate(grounded, report, depth)
        originals = list(proof.concl.ante)
        # discharge premises that became valid, last first so indices stay put
        for i in reversed(range(len(originals))):
            if not has_class(originals[i]):
                continue
            A = out.concl.ante[i]
            lemma = prove_lkminus(Sequent([], [A]), depth)
            if isinstance(lemma, Proof):
                out = _discharge(out, i, lemma)
                report.discharged.append(originals[i])
            else:
                report.replaced.append((originals[i], A))
        report.replaced.reverse()
        report.discharged.reverse()
        if check:
            verdict = check_proof(out, "LK")
            if not verdict:
                raise NotTemplateProof(verdict.certificate)
            if any(has_class(f) for n in out.nodes() for f in n.concl.formulas()):
                raise NotTemplateProof("class symbols survived the rewrite")
    return out, report


def eliminate_class_terms(proof: Proof, depth: int = 2, check: bool = True) -> Proof:
    """An s-proof of the class-free part of proof's endsequent (see module doc)."""
    if not any(has_class(f) for n in proof.nodes() for f in n.concl.formulas()):
        return proof
    return eliminate_with_report(proof, depth, check)[0]


def class_separation(T: ClassTerm, params=(), z=None, x=None, x1=None):
    """∀params ∀x ∃x′ ∀z (z∈x′ ↔ z∈x ∧ z∈T): the intersection of T with a set is a set."""
    z = z or Variable("z")
    x = x or Variable("x")
    x1 = x1 or Variable("x'")
    f = Forall(x, Exists(x1, Forall(z, Iff(member(z, x1), And(member(z, x), class_member(z, T))))))
    for v in reversed(params):
        f = Forall(v, f)
    return f


def membership_axiom(T: ClassTerm, z=None):
    """∀z (z ∈ T ↔ Φ(z))."""
    z = z or Variable("z")
    return Forall(z, Iff(class_member(z, T), substitute(T.body, {T.var: z})))


def is_comprehension_instance(f, psi, z=Variable("z"), y=Variable("y")) -> bool:
    return alpha_equal(f, instantiate_comprehension(psi, z, y))


__all__ = [
    "QuantifiedClassVariable",
    "NotTemplateProof",
    "Report",
    "class_separation",
    "eliminate_class_terms",
    "eliminate_with_report",
    "has_class",
    "is_comprehension_instance",
    "membership_axiom",
    "rewrite",
]
