"""Set-theoretic notions spelled out as s-formulas.

Everything here is written with membership and identity only, and almost
every quantifier is guarded by a membership atom, so the formulas can be
evaluated on finite structures.  Pairs are Kuratowski pairs and tuples are
right-nested pairs ending in the empty set, matching ``satrel.encoding``.

A ``Lang`` object hands out fresh variable names ``k1, k2, ...``; formulas
built by one object never reuse a bound name, so they can be spliced
together without capture.
"""

from __future__ import annotations

from ..encoding import TAGS, _enc_str, ackermann, encode
from ..hf import HfSet
from ..syntax.ast import (
    CLASS,
    And,
    Atom,
    Equal,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Neg,
    Or,
    Variable,
    class_member,
    conj,
    disj,
    member,
)
from ..syntax.ops import bexists, bforall

NODE = {cls.__name__: tag for cls, tag in TAGS.items()}
BINARY_TAGS = {"And": And, "Or": Or, "Implies": Implies, "Iff": Iff}


class Lang:
    def __init__(self, stem: str = "k"):
        self.stem = stem
        self.count = 0

    def var(self, sort: str = "set") -> Variable:
        self.count += 1
        return Variable(f"{self.stem}{self.count}", sort)

    # ------------------------------------------------------------ basics

    def empty(self, a) -> Formula:
        e = self.var()
        return bforall(e, a, Neg(Equal(e, e)))

    def singleton(self, s, a) -> Formula:
        """s = {a}"""
        e = self.var()
        return And(member(a, s), bforall(e, s, Equal(e, a)))

    def doubleton(self, d, a, b) -> Formula:
        """d = {a, b}"""
        e = self.var()
        return conj(member(a, d), member(b, d), bforall(e, d, Or(Equal(e, a), Equal(e, b))))

    def pair(self, p, a, b) -> Formula:
        """p = ⟨a, b⟩ = {{a}, {a, b}}"""
        s, d, w = self.var(), self.var(), self.var()
        inner = conj(self.singleton(s, a), self.doubleton(d, a, b), bforall(w, p, Or(Equal(w, s), Equal(w, d))))
        return bexists(s, p, bexists(d, p, inner))

    def pair_in(self, a, b, r) -> Formula:
        """⟨a, b⟩ ∈ r"""
        p = self.var()
        return bexists(p, r, self.pair(p, a, b))

    def some_pair(self, p, body) -> Formula:
        """p is a pair ⟨a, b⟩ with body(a, b); a and b are bound inside p."""
        s, a, d, b = self.var(), self.var(), self.var(), self.var()
        return bexists(s, p, bexists(a, s, bexists(d, p, bexists(b, d, And(self.pair(p, a, b), body(a, b))))))

    def every_pair(self, p, body) -> Formula:
        """if p is a pair ⟨a, b⟩ then body(a, b)."""
        s, a, d, b = self.var(), self.var(), self.var(), self.var()
        return bforall(s, p, bforall(a, s, bforall(d, p, bforall(b, d, Implies(self.pair(p, a, b), body(a, b))))))

    def binds(self, q, v) -> Formula:
        """q is a pair whose first component is v."""
        return self.some_pair(q, lambda a, b: Equal(a, v))

    def tuple_(self, t, k: int, body, every: bool = False) -> Formula:
        """t = ⟨f1, ⟨f2, … ⟨fk, ∅⟩⟩⟩ and body(f1, …, fk)."""
        step = self.every_pair if every else self.some_pair

        def go(r, done):
            if len(done) == k:
                return (Implies if every else And)(self.empty(r), body(*done))
            return step(r, lambda f, rest: go(rest, done + [f]))

        return go(t, [])

    # ------------------------------------------------------------ constants

    def const(self, w, c: HfSet) -> Formula:
        """w = c."""
        return self.dag_const(w, c)

    def dag_const(self, x, c: HfSet, holes=None) -> Formula:
        """x = c, with one witness per distinct subset of c.

        Witnesses are introduced top-down, each bounded by a set already
        named, and a node's extent is checked as soon as its children are
        named, so the formula is linear in the size of c and cheap to
        evaluate.  ``holes`` maps some subsets to terms standing for them.
        """
        names = dict(holes or {})
        if c in names:
            return Equal(x, names[c])

        def extent(s, v):
            kids = [names[d] for d in s.children]
            e = self.var()
            out = [bforall(e, v, disj(*[Equal(e, k) for k in kids]) if kids else Neg(Equal(e, e)))]
            return conj(*out, *[member(k, v) for k in kids])

        def node(s, v, cont):
            names[s] = v
            kids = list(s.children)

            def step(i):
                if i == len(kids):
                    rest = cont()
                    here = extent(s, v)
                    return here if rest is None else And(here, rest)
                d = kids[i]
                if d in names:
                    return step(i + 1)
                w = self.var()
                return bexists(w, v, node(d, w, lambda: step(i + 1)))

            return step(0)

        return node(c, x, lambda: None)

    # ------------------------------------------------------------ ordinals

    def transitive(self, a) -> Formula:
        b, c = self.var(), self.var()
        return bforall(b, a, bforall(c, b, member(c, a)))

    def ordinal(self, a) -> Formula:
        """transitive set of transitive sets (foundation does the rest)."""
        b = self.var()
        return And(self.transitive(a), bforall(b, a, self.transitive(b)))

    def zero_or_successor(self, m) -> Formula:
        k, w = self.var(), self.var()
        succ = bexists(k, m, And(bforall(w, m, Or(member(w, k), Equal(w, k))), self.subset(k, m)))
        return Or(self.empty(m), succ)

    def subset(self, a, b) -> Formula:
        e = self.var()
        return bforall(e, a, member(e, b))

    def natural(self, n) -> Formula:
        """n ∈ ω: an ordinal all of whose elements, and itself, are 0 or successors."""
        m = self.var()
        return conj(self.ordinal(n), self.zero_or_successor(n), bforall(m, n, self.zero_or_successor(m)))

    def rank_below(self, x, n) -> Formula:
        """x ∈ V_n for an ordinal n.

        Witnessed by a relation f ⊆ _ × n containing ⟨x, b⟩ for some b, such
        that for every ⟨a, b⟩ ∈ f each w ∈ a has some ⟨w, c⟩ ∈ f with c ∈ b.
        """
        f, b0, p = self.var(), self.var(), self.var()
        first = bexists(b0, n, self.pair_in(x, b0, f))

        def ok(a, b):
            w, c = self.var(), self.var()
            return And(member(b, n), bforall(w, a, bexists(c, b, self.pair_in(w, c, f))))

        return Exists(f, And(first, bforall(p, f, self.some_pair(p, ok))))

    # ------------------------------------------------------------ expression codes

    def node(self, e, kind: str, k: int, body, every: bool = True) -> Formula:
        """e codes a ``kind`` node with k fields satisfying body(fields…)."""
        tag = ackermann(NODE[kind])
        if every:
            return self.every_pair(e, lambda t, r: Implies(self.const(t, tag), self.tuple_(r, k, body, every=True)))
        return self.some_pair(e, lambda t, r: And(self.const(t, tag), self.tuple_(r, k, body)))

    def set_variable(self, v) -> Formula:
        """v codes a variable of the set sort."""
        sort = _enc_str("set")
        return self.node(v, "Variable", 2, lambda name, s: self.const(s, sort), every=False)

    def sat(self, S, psi, A) -> Formula:
        """⟨ψ, A⟩ ∈ S"""
        p = self.var()
        return Exists(p, And(self.pair(p, psi, A), class_member(p, S)))

    def value(self, A, v, body) -> Formula:
        """A assigns some a to v with body(a)."""
        q = self.var()
        return bexists(q, A, self.some_pair(q, lambda u, a: And(Equal(u, v), body(a))))

    def assignment(self, A, guard=None) -> Formula:
        """A is a function (a set of pairs, single-valued); values satisfy guard."""
        p, q = self.var(), self.var()

        def values(u, a):
            g = [guard(a)] if guard else []
            single = bforall(q, A, self.every_pair(q, lambda u2, b: Implies(Equal(u, u2), Equal(a, b))))
            return conj(*g, single)

        return bforall(p, A, self.some_pair(p, values))

    def update(self, A2, A, v, a) -> Formula:
        """A2 = A with v sent to a."""
        q, r = self.var(), self.var()
        own = bforall(q, A2, Or(self.pair(q, v, a), And(member(q, A), Neg(self.binds(q, v)))))
        keep = bforall(r, A, Or(self.binds(r, v), member(r, A2)))
        return conj(self.pair_in(v, a, A2), own, keep)

    def clauses(self, S, psi, A, guard=None) -> Formula:
        """The recursive satisfaction clauses for the code psi at A."""
        here = lambda: self.sat(S, psi, A)  # noqa: E731
        in_name = _enc_str("in")

        def atom(name, args):
            def both(v1, v2):
                rhs = self.value(A, v1, lambda a: self.value(A, v2, lambda b: member(a, b)))
                return Iff(here(), rhs)
            return Implies(self.const(name, in_name), self.tuple_(args, 2, both, every=True))

        def equal(v1, v2):
            rhs = self.value(A, v1, lambda a: self.value(A, v2, lambda b: Equal(a, b)))
            return Iff(here(), rhs)

        parts = [
            self.node(psi, "Atom", 2, atom),
            self.node(psi, "Equal", 2, equal),
            self.node(psi, "Neg", 1, lambda g: Iff(here(), Neg(self.sat(S, g, A)))),
        ]
        for kind, cls in BINARY_TAGS.items():
            parts.append(self.node(
                psi, kind, 2,
                lambda g, h, cls=cls: Iff(here(), cls(self.sat(S, g, A), self.sat(S, h, A)))))

        def quant(is_exists):
            def body(v, g):
                a, A2 = self.var(), self.var()
                cond = self.update(A2, A, v, a)
                if guard is not None:
                    cond = And(guard(a), cond)
                if is_exists:
                    rhs = Exists(a, Exists(A2, And(cond, self.sat(S, g, A2))))
                else:
                    rhs = Forall(a, Forall(A2, Implies(cond, self.sat(S, g, A2))))
                return Iff(here(), rhs)
            return body

        parts.append(self.node(psi, "Exists", 2, quant(True)))
        parts.append(self.node(psi, "Forall", 2, quant(False)))
        return conj(*parts)

    def sat_relation(self, S, scope, guard=None) -> Formula:
        """S is the satisfaction relation for the codes picked out by scope(ψ)."""
        psi, A = self.var(), self.var()
        return Forall(psi, Implies(scope(psi), Forall(A, Implies(self.assignment(A, guard), self.clauses(S, psi, A, guard)))))

    def true_in(self, S, x) -> Formula:
        """⊨^S x, i.e. ⟨x, ∅⟩ ∈ S."""
        e = self.var()
        return Exists(e, And(self.empty(e), self.sat(S, x, e)))

    # ------------------------------------------------------------ subformulas

    def immediate_subformula(self, g, f) -> Formula:
        """g is a field of the code f (the fields of a node are its candidates)."""
        return self.some_pair(f, lambda t, r: self.some_pair(
            r, lambda f1, r2: Or(Equal(g, f1), self.some_pair(r2, lambda f2, r3: Equal(g, f2)))))

    def subformula(self, g, f) -> Formula:
        """g is reachable from f by field steps."""
        t, e, e2 = self.var(), self.var(), self.var()
        closed = bforall(e, t, Or(Equal(e, f), bexists(e2, t, self.immediate_subformula(e, e2))))
        return Exists(t, conj(member(f, t), member(g, t), closed))


def class_var(name: str = "S") -> Variable:
    return Variable(name, CLASS)


def code(f) -> HfSet:
    return encode(f)


__all__ = ["Lang", "class_var", "code", "NODE"]
