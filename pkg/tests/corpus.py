"""Proof corpora and a structure pool shared by the sequent and acceptance tests."""

import random
from functools import lru_cache

from satrel.semantics import Structure, hf_membership_structure
from satrel.sequent import Proof, Sequent, check_proof, prove_lkminus, reshape
from satrel.syntax import S, parse, propositional

P = propositional()


def f(text, sig=P):
    return parse(text, sig)


def seq(ante, succ, sig=P):
    return Sequent([f(a, sig) for a in ante], [f(s, sig) for s in succ])


def found(ante, succ, sig=P, depth=3):
    r = prove_lkminus(seq(ante, succ, sig), depth)
    assert isinstance(r, Proof), (ante, succ, r)
    return r


def cut(p1, p2, target=None):
    """LK cut on the last succedent formula of p1; reshaped to target if given."""
    s1, s2 = p1.concl, p2.concl
    c = Proof("cut", Sequent(s1.ante + s2.ante[1:], s1.succ[:-1] + s2.succ), [p1, p2])
    return reshape(c, target) if target is not None else c


def cut_on(a, ante, succ, sig=P, depth=3):
    """Γ ⇒ Δ by a cut on a, both premises found by search."""
    A = f(a, sig)
    target = seq(ante, succ, sig)
    left = prove_lkminus(Sequent(target.ante, target.succ + (A,)), depth)
    right = prove_lkminus(Sequent((A,) + target.ante, target.succ), depth)
    assert isinstance(left, Proof) and isinstance(right, Proof), (a, ante, succ)
    return cut(left, right, target)


# ------------------------------------------------------------ golden proofs


def rule(name, ante, succ, *premises, sig=P, **data):
    return Proof(name, seq(ante, succ, sig), premises, data)


def peirce_proof():
    """A hand-built 20-node LK proof of ⇒ ((p→q)→p)→p."""
    pq, pqp = "(implies p q)", "(implies (implies p q) p)"
    # ⇒ p, p→q by a cut on ¬p
    l1 = rule("init", ["p"], ["p"])
    l2 = rule("notL", ["(not p)", "p"], [], l1)
    l3 = rule("weakR", ["(not p)", "p"], ["q"], l2)
    l4 = rule("exchL", ["p", "(not p)"], ["q"], l3, index=0)
    l5 = rule("impR", ["(not p)"], [pq], l4)
    l6 = rule("init", ["p"], ["p"])
    l7 = rule("notR", [], ["p", "(not p)"], l6)
    l8 = rule("cut", [], ["p", pq], l7, l5)
    # p ⇒ p, again through ¬p
    r1 = rule("init", ["p"], ["p"])
    r2 = rule("notR", [], ["p", "(not p)"], r1)
    r3 = rule("init", ["p"], ["p"])
    r4 = rule("notL", ["(not p)", "p"], [], r3)
    r5 = rule("exchL", ["p", "(not p)"], [], r4, index=0)
    r6 = rule("weakR", ["p", "(not p)"], ["p"], r5)
    r7 = rule("exchL", ["(not p)", "p"], ["p"], r6, index=0)
    r8 = rule("cut", ["p"], ["p", "p"], r2, r7)
    r9 = rule("contrR", ["p"], ["p"], r8)
    c1 = rule("impL", [pqp], ["p", "p"], l8, r9)
    c2 = rule("contrR", [pqp], ["p"], c1)
    return rule("impR", [], [f"(implies {pqp} p)"], c2)


def lem_via_cut():
    """⇒ p ∨ ¬p by a cut on p."""
    target = seq([], ["(or p (not p))"])
    left = found([], ["(or p (not p))", "p"])
    right = found(["p"], ["(or p (not p))"])
    return cut(left, right, target)


def stacked_cuts():
    """p→q, q→r ⇒ p→r through two stacked cuts."""
    target = seq(["(implies p q)", "(implies q r)"], ["(implies p r)"])
    inner = cut_on("(implies p q)", ["(implies p q)", "(implies q r)"], ["(implies p r)"])
    lemma = f("(and (implies q r) (implies p q))")
    left = prove_lkminus(Sequent(target.ante, (lemma,)), 2)
    right = Proof("weakL", Sequent((lemma,) + target.ante, target.succ), [inner])
    return cut(left, right, target)


# ------------------------------------------------------------ LK-with-cut corpus


PROP_CUTS = [
    ("p", [], ["(or p (not p))"]),
    ("q", ["p"], ["(or p q)"]),
    ("(and p q)", ["p", "q"], ["(and q p)"]),
    ("(or p q)", ["(or q p)"], ["(or p q)"]),
    ("(implies p q)", ["(not p)"], ["(implies p q)"]),
    ("(not (not p))", ["p"], ["(not (not p))"]),
    ("(iff p q)", ["(iff q p)"], ["(iff p q)"]),
    ("(implies (implies p q) p)", [], ["(implies (implies (implies p q) p) p)"]),
    ("(and p (not p))", ["(and p (not p))"], ["q"]),
    ("(or (not p) q)", ["(implies p q)"], ["(or (not p) q)"]),
    ("(iff (and p q) (and q p))", [], ["(or r (not r))"]),
    ("r", ["(implies p r)", "p"], ["(or r q)"]),
    ("(implies q r)", ["(implies q r)", "(implies p q)"], ["(implies p r)"]),
    ("(not (and p q))", ["(or (not p) (not q))"], ["(not (and p q))"]),
    ("(iff p (not (not p)))", [], ["(iff (not (not p)) p)"]),
]

FO_CUTS = [
    ("(forall u (in u v))", ["(forall u (in u v))"], ["(in w v)"]),
    ("(exists u (in u v))", ["(in w v)"], ["(exists u (in u v))"]),
    ("(forall u (= u u))", [], ["(= v v)"]),
    ("(in w v)", ["(forall u (in u v))"], ["(exists u (in u v))"]),
    ("(exists u (not (in u v)))", ["(not (forall u (in u v)))"], ["(exists u (not (in u v)))"]),
    ("(in v w)", ["(= u v)", "(in u w)"], ["(in v w)"]),
    ("(forall u (implies (in u v) (in u w)))", ["(forall u (implies (in u v) (in u w)))", "(in t v)"], ["(in t w)"]),
]


@lru_cache(maxsize=None)
def cut_corpus():
    out = [lem_via_cut(), peirce_proof(), stacked_cuts()]
    out += [cut_on(a, ante, succ) for a, ante, succ in PROP_CUTS]
    out += [cut_on(a, ante, succ, S) for a, ante, succ in FO_CUTS]
    # nested cuts: a cut proof as premise of another cut
    rng = random.Random(7)
    for _ in range(10):
        a1, ante, succ = rng.choice(PROP_CUTS)
        inner = cut_on(a1, ante, succ)
        A = f(rng.choice(["p", "q", "(and p q)", "(implies q p)", "(iff p r)"]))
        left = Proof("weakR", Sequent(inner.concl.ante, inner.concl.succ + (A,)), [inner])
        right = prove_lkminus(Sequent((A,) + inner.concl.ante, inner.concl.succ), 2)
        out.append(cut(left, right, inner.concl))
    for p in out:
        assert check_proof(p, "LK"), check_proof(p, "LK").certificate
    return tuple(out)


# ------------------------------------------------------------ entailment corpus

EXT = "(forall u (forall v (implies (forall w (iff (in w u) (in w v))) (= u v))))"
PAIR = "(forall u (forall u1 (exists v (forall w (iff (in w v) (or (= w u) (= w u1)))))))"

ENTAILMENTS = [
    ([], "(forall u (= u u))"),
    ([], "(forall u (forall v (implies (= u v) (= v u))))"),
    ([], "(forall u (forall v (forall w (implies (and (= u v) (= v w)) (= u w)))))"),
    ([], "(not (exists x (forall z (iff (in z x) (not (in z z))))))"),
    ([], "(exists u (implies (in u v) (forall w (in w v))))"),
    (["(forall u (in u v))"], "(in v v)"),
    (["(forall u (not (in u u)))"], "(not (exists u (in u u)))"),
    (["(exists u (forall w (not (in w u))))"], "(exists u (not (in u u)))"),
    (["(exists y (forall x (in x y)))"], "(exists y (in y y))"),
    (["(forall x (forall y (implies (in x y) (not (in y x)))))"], "(forall x (not (in x x)))"),
    (["(forall u (and (in u v) (in v u)))"], "(and (forall u (in u v)) (forall u (in v u)))"),
    (["(exists u (or (in u v) (in v u)))"], "(or (exists u (in u v)) (exists u (in v u)))"),
    (["(exists u (forall w (in w u)))"], "(forall w (exists u (in w u)))"),
    (["(forall u (= u v))"], "(forall u (forall w (= u w)))"),
    (["(not (exists u (not (in u v))))"], "(forall u (in u v))"),
    (["(forall u (in u v))"], "(not (exists u (not (in u v))))"),
    (["(forall u (implies (in u v) (in u w)))", "(forall u (implies (in u w) (in u t)))"],
     "(forall u (implies (in u v) (in u t)))"),
    (["(forall u (forall w (implies (in u w) (in w u))))"], "(forall u (forall w (iff (in u w) (in w u))))"),
    (["(forall u (exists w (in u w)))", "(forall u (not (in u u)))"], "(exists u (exists w (not (= u w))))"),
    ([PAIR], "(forall u (exists v (in u v)))"),
    ([PAIR], "(exists v (in u v))"),
    ([EXT, "(forall w (not (in w u)))", "(forall w (not (in w v)))"], "(= u v)"),
    ([EXT], "(forall u (forall v (implies (forall w (iff (in w u) (in w v))) (= v u))))"),
    (["(forall u (exists x (forall z (iff (in z x) (and (in z u) (not (in z z)))))))"],
     "(forall u (exists x (forall z (implies (in z x) (in z u)))))"),
    (["(= u v)", "(in u w)"], "(in v w)"),
    (["(forall u (forall v (in u v)))"], "(exists u (in u u))"),
    (["(exists u (in u v))", "(forall u (not (in u v)))"], "(in v v)"),
]


@lru_cache(maxsize=None)
def entailment_corpus():
    """(premises, conclusion, proof of premises ⇒ conclusion); some proofs use cut."""
    out = []
    for i, (ante, succ) in enumerate(ENTAILMENTS):
        target = seq(ante, [succ], S)
        p = prove_lkminus(target, 3)
        assert isinstance(p, Proof), (ante, succ, p)
        if i % 3 == 0:
            # route through a trivial lemma to get an LK proof with a cut
            lemma = f("(forall u (= u u))", S)
            left = prove_lkminus(Sequent(target.ante, (lemma,)), 1)
            right = Proof("weakL", Sequent((lemma,) + target.ante, target.succ), [p])
            p = cut(left, right, target)
        assert check_proof(p, "LK")
        out.append((target.ante, target.succ[0], p))
    return tuple(out)


# ------------------------------------------------------------ structures


@lru_cache(maxsize=None)
def structure_pool():
    """Ten finite {∈}-structures."""
    rng = random.Random(1234)
    pool = [hf_membership_structure(n) for n in (1, 2, 3, 4)]
    pool.append(Structure({"set": ["a"]}, {"in": {("a", "a")}}, sig=S, name="loop"))
    pool.append(Structure({"set": ["a", "b"]}, {"in": {("a", "b"), ("b", "a")}}, sig=S, name="cycle"))
    for k in range(4):
        elems = [f"x{i}" for i in range(2 + k % 3)]
        rel = {(a, b) for a in elems for b in elems if rng.random() < 0.45}
        pool.append(Structure({"set": elems}, {"in": rel}, sig=S, name=f"R{k}"))
    return tuple(pool)


# ------------------------------------------------------------ class-term proofs

T1 = "(classterm w (not (in w y)))"
T2 = "(classterm w (and (in w y) (= w w)))"
TU = "(classterm w (= w w))"
SUBSET_EXISTS = "(forall y (forall x (exists x1 (forall z (implies (in z x1) (in z x))))))"


def _class_term(text):
    from satrel.syntax import C

    return f(f"(class-in u {text})", C).args[1]


def mem(text):
    from satrel.syntax import to_sexpr
    from satrel.theories import membership_axiom

    return to_sexpr(membership_axiom(_class_term(text)))


def sep(text):
    from satrel.syntax import Variable, to_sexpr
    from satrel.theories import class_separation

    return to_sexpr(class_separation(_class_term(text), [Variable("y")]))


CLASS_FOUND = [
    ([mem(TU)], [f"(class-in u {TU})"]),
    (["(class-in u X:class)"], ["(class-in u X:class)"]),
    (["(= X:class Y:class)", "(class-in u X:class)"], ["(class-in u Y:class)"]),
    ([mem(T1)], [f"(forall u (iff (class-in u {T1}) (not (in u y))))"]),
    ([sep(T1)], [SUBSET_EXISTS]),
    ([sep(T2)], [SUBSET_EXISTS]),
    ([], [f"(= {T1} {T1})"]),
    (["(class-in v X:class)", "(= u v)"], ["(class-in u X:class)"]),
]

CLASS_CUTS = [
    (f"(class-in u {T1})", [mem(T1), "(not (in u y))"], ["(not (in u y))"]),
    (f"(class-in u {T2})", [mem(T2), "(in u y)"], [f"(exists v (class-in v {T2}))"]),
    ("(class-in u X:class)", ["(class-in u X:class)"], ["(exists v (class-in v X:class))"]),
    (f"(forall z (class-in z {TU}))", [mem(TU)], ["(= v v)"]),
]


@lru_cache(maxsize=None)
def class_corpus():
    from satrel.syntax import C

    out = [found(a, s, C) for a, s in CLASS_FOUND]
    out += [cut_on(a, ante, succ, C) for a, ante, succ in CLASS_CUTS]
    return tuple(out)


# s-endsequents whose proofs pass through class terms only inside cut formulas
S_THROUGH_CLASS = [
    (f"(or (class-in u {T1}) (not (class-in u {T1})))", [], ["(= u u)"]),
    ("(implies (class-in u X:class) (class-in u X:class))", ["(in u y)"], ["(in u y)"]),
    (f"(forall z (implies (class-in z {T2}) (class-in z {T2})))", [], ["(exists v (= v v))"]),
    (f"(= {T1} {T1})", [], ["(forall u (= u u))"]),
    ("(= X:class X:class)", [], ["(= u u)"]),
    (f"(exists z (or (class-in z {TU}) (not (class-in z {TU}))))", [], ["(exists v (= v v))"]),
    (f"(and (in u y) (implies (class-in u {T1}) (class-in u {T1})))", ["(in u y)"], ["(in u y)"]),
    ("(iff (class-in u X:class) (class-in u X:class))", ["(in u v)"], ["(exists w (in w v))"]),
    (f"(implies (in u y) (implies (class-in u {T1}) (in u y)))", ["(in u y)"], ["(or (in u y) (in y u))"]),
    (f"(forall z (iff (class-in z {T2}) (class-in z {T2})))", ["(forall u (in u y))"], ["(in v y)"]),
    (f"(or (not (class-in u {T1})) (class-in u {T1}))", ["(in u y)", "(not (in u y))"], []),
    (f"(= {T2} {T2})", ["(= u v)", "(in u y)"], ["(in v y)"]),
]


@lru_cache(maxsize=None)
def s_through_class_corpus():
    from satrel.syntax import C

    return tuple(cut_on(a, ante, succ, C) for a, ante, succ in S_THROUGH_CLASS)
