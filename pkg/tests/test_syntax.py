import random

import pytest
from hypothesis import given, settings

from satrel.sexpr import ParseError
from satrel.syntax import (
    C,
    S,
    S_PRIME,
    S_STAR,
    Apply,
    ArityError,
    Atom,
    Equal,
    Exists,
    Forall,
    Iff,
    Implies,
    And,
    Neg,
    SortError,
    Variable,
    free_vars,
    fresh_var,
    instantiate_collection,
    instantiate_comprehension,
    is_closed,
    parse,
    relativize,
    substitute,
    to_sexpr,
    alpha_equal,
)
from satrel.semantics import (
    Structure,
    all_assignments,
    direct_truth,
    hf_membership_structure,
    membership_structure,
)
from satrel.hf import stage

from helpers import U, V, W, formulas, random_formula

x_, y_, z_ = Variable("x"), Variable("y"), Variable("z")


def test_parse_examples():
    f = parse("(forall u (= u u))", S)
    assert f == Forall(U, Equal(U, U))
    g = parse("(exists u (not (= u u)))", S)
    assert g == Exists(U, Neg(Equal(U, U)))


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse("(forall u (= u u)", S)
    assert exc.value.pos == 0
    with pytest.raises(SortError, match="adjoin"):
        parse("(in (adjoin u u) u)", S)
    with pytest.raises(SortError, match="class-in"):
        parse("(class-in u v)", S)
    with pytest.raises(SortError):
        parse("(class-in u v)", C)  # v is a set variable
    assert parse("(class-in u X:class)", C) == Atom("class-in", (U, Variable("X", "class")))
    with pytest.raises(ParseError):
        parse("(not a b)", S)


def test_primed_and_starred_signatures():
    t = parse("(= (adjoin empty empty) u)", S_PRIME)
    assert t.left == Apply("adjoin", (Apply("empty"), Apply("empty")))
    f = parse("(and (V P) (in G P))", S_STAR)
    assert f.left == Atom("V", (Apply("P"),))


@settings(max_examples=1000, deadline=None)
@given(formulas(with_ops=True))
def test_round_trip_corpus(f):
    text = to_sexpr(f)
    g = parse(text, S_PRIME)
    assert g == f
    assert to_sexpr(g) == text


def test_free_vars_examples():
    assert free_vars(parse("(forall u (= u u))", S)) == frozenset()
    assert free_vars(parse("(in u v)", S)) == {U, V}
    assert free_vars(parse("(exists v (and (in u v) (in v w)))", S)) == {U, W}


def test_substitute_examples():
    zero = Apply("empty")
    f = parse("(in u v)", S)
    assert substitute(f, {U: zero}) == Atom("in", (zero, V))
    assert substitute(f, {W: zero}) is f
    g = parse("(exists v (in u v))", S)
    h = substitute(g, {U: V})
    assert h.var != V and free_vars(h) == {V}
    assert h == Exists(Variable("v#0"), Atom("in", (V, Variable("v#0"))))


def test_capture_avoidance_semantically():
    st = hf_membership_structure(3)
    g = parse("(exists v (and (in u v) (not (in v w))))", S)
    h = substitute(g, {U: V})
    # h(v, w) must mean g(u := v, w)
    for a in all_assignments(st, [V, W]):
        assert direct_truth(st, h, a) == direct_truth(st, g, {U: a[V], W: a[W]})


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_substitute_free_vars_law(f):
    for v in (U, V, W):
        if v in free_vars(f):
            t = Apply("adjoin", (W, Apply("empty")))
            assert free_vars(substitute(f, {v: t})) == (free_vars(f) - {v}) | {W}


def test_fresh_var_minimal():
    assert fresh_var({"v#0", "v#2"}).name == "v#1"
    assert fresh_var([]).name == "v#0"


def test_relativize_examples():
    f = parse("(in u v)", S)
    assert relativize(f) is f
    g = parse("(forall u (= u u))", S)
    assert relativize(g) == Forall(U, Implies(Atom("V", (U,)), Equal(U, U)))
    h = parse("(exists u (in u v))", S)
    assert relativize(h) == Exists(U, And(Atom("V", (U,)), Atom("in", (U, V))))


def test_relativize_idempotent():
    rng = random.Random(5)
    for _ in range(200):
        f = random_formula(rng, 4)
        r = relativize(f, "M")
        assert relativize(r, "M") == r


def test_relativize_matches_substructure():
    rng = random.Random(11)
    big = stage(3)
    for trial in range(40):
        sub = [x for x in big if rng.random() < 0.6] or [big[0]]
        subset = frozenset(sub)
        st = membership_structure(big, extra_predicates={"M": lambda a: a in subset})
        small = membership_structure(sub)
        f = random_formula(rng, 4)
        r = relativize(f, "M")
        fv = sorted(free_vars(f), key=lambda v: v.name)
        for a in all_assignments(small, fv):
            assert direct_truth(st, r, a) == direct_truth(small, f, a)


def test_comprehension_instance():
    inst = instantiate_comprehension(parse("(in z y)", S))
    expected = parse(
        "(forall y (forall x (exists x' (forall z (iff (in z x') (and (in z x) (in z y)))))))", S
    )
    assert inst == expected
    assert is_closed(inst)
    assert parse(to_sexpr(inst), S) == inst


def test_comprehension_x_prime_equals_x():
    inst = instantiate_comprehension(parse("(= z z)", S))
    st = hf_membership_structure(3)
    assert direct_truth(st, inst, {})
    # the witness for x' is x itself
    body = inst.body.body.body
    assert direct_truth(st, Forall(x_, substitute(body, {Variable("x'"): x_})), {y_: stage(3)[0]})


def test_comprehension_roles_by_occurrence():
    inst = instantiate_comprehension(parse("(in a b)", S))
    assert inst == instantiate_comprehension(parse("(in z y)", S))
    with pytest.raises(ArityError):
        instantiate_comprehension(parse("(and (in a b) (in c c))", S))


def test_collection_instance_true_on_v3():
    inst = instantiate_collection(parse("(and (in z y) (= beta beta))", S))
    assert is_closed(inst)
    assert parse(to_sexpr(inst), S) == inst
    st = hf_membership_structure(3)
    assert direct_truth(st, inst, {})
    with pytest.raises(ArityError):
        instantiate_collection(parse("(and (in a b) (in c d))", S))


def test_alpha_equivalence():
    f = parse("(exists u (in u w))", S)
    g = parse("(exists v (in v w))", S)
    assert alpha_equal(f, g) and f != g
    assert not alpha_equal(f, parse("(exists v (in v u))", S))
