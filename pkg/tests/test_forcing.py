from itertools import chain as chained, combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from satrel.forcing import (
    Forcing,
    PName,
    Poset,
    PosetError,
    RankBoundExceeded,
    antichain_below_top,
    boolean_value,
    chain,
    check,
    forces_recursive,
    forces_semantic,
    forces_star,
    generic_filters,
    is_filter,
    posets_up_to_iso,
    value_of,
)
from satrel.forcing.grid import GridReport, check_poset, formula_corpus
from satrel.hf import empty, hf, rank, stage
from satrel.syntax import S, Implies, Variable, parse

X, Y = Variable("x"), Variable("y")
ZERO = PName(label="0")
IN0 = parse("(exists e (and (forall w (not (in w e))) (in e x)))", S)  # ∅̌ ∈ x


def subsets(xs):
    xs = list(xs)
    return chained.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


def brute_generic_filters(P):
    """All filters meeting every dense subset, by exhaustive enumeration."""
    dense = [set(D) for D in subsets(P.elements) if all(any(r in D for r in P.below(q)) for q in P.elements)]
    return {frozenset(F) for F in subsets(P.elements) if is_filter(P, F) and all(set(F) & D for D in dense)}


@st.composite
def posets(draw, size=6):
    els = [f"e{i}" for i in range(size - 1)]
    strict = {(els[i], els[j]) for i in range(len(els)) for j in range(i + 1, len(els)) if draw(st.booleans())}
    return Poset.from_covers(["1", *els], strict | {(e, "1") for e in els})


# ------------------------------------------------------------ posets and filters


def test_one_element_poset():
    P = Poset(["1"], [])
    assert generic_filters(P) == [frozenset({"1"})]


def test_antichain_filters():
    P = antichain_below_top()
    assert set(generic_filters(P)) == {frozenset({"a", "1"}), frozenset({"b", "1"})}


@settings(max_examples=40, deadline=None)
@given(posets())
def test_generic_filters_match_brute_force(P):
    assert set(generic_filters(P)) == brute_generic_filters(P)


def test_poset_validation():
    with pytest.raises(PosetError):
        Poset(["1", "a"], [("a", "1"), ("1", "a")])
    with pytest.raises(PosetError):
        Poset(["a", "b"], [])
    with pytest.raises(PosetError):
        Poset(["1", "a", "b"], [("a", "b"), ("b", "1")])


def test_posets_up_to_iso():
    Ps = posets_up_to_iso(4)
    assert [len(P) for P in Ps] == [1, 2, 3, 3, 4, 4, 4, 4, 4]

    def iso(P, Q):
        return any(
            {(m[a], m[b]) for a, b in P.le_pairs} == set(Q.le_pairs)
            for m in (dict(zip(P.elements, perm)) for perm in permutations(Q.elements))
        )

    for i, P in enumerate(Ps):
        assert not any(len(P) == len(Q) and iso(P, Q) for Q in Ps[i + 1:])


def test_chain_has_one_filter():
    P = chain(4)
    assert P.minimal == ("c3",)
    assert generic_filters(P) == [frozenset(P.elements)]


# ------------------------------------------------------------ names and values


def test_empty_name():
    assert value_of(ZERO, frozenset({"1"})) == empty()


def test_name_under_a_condition():
    x = PName([(ZERO, "a")])
    assert value_of(x, frozenset({"a", "1"})) == hf(empty())
    assert value_of(x, frozenset({"b", "1"})) == empty()


@given(st.sampled_from(stage(3)))
def test_check_names_are_identity(a):
    P = antichain_below_top()
    for G in generic_filters(P):
        assert value_of(check(a, "1"), G) == a


@given(st.sampled_from(stage(3)))
def test_value_rank_is_bounded(a):
    P = antichain_below_top()
    x = PName([(check(a, "1"), "a"), (ZERO, "b")])
    for G in generic_filters(P):
        assert rank(value_of(x, G)) <= x.rank


def test_rank_bound():
    deep = check(hf(hf(hf(empty()))), "1")
    assert deep.rank == 3
    with pytest.raises(RankBoundExceeded):
        forces_semantic(antichain_below_top(), "1", parse("(= x x)", S), {X: deep})


# ------------------------------------------------------------ forcing


def test_identity_is_forced_everywhere():
    P = antichain_below_top()
    f = parse("(forall u (= u u))", S)
    for p in P.elements:
        assert forces_semantic(P, p, f) and forces_recursive(P, p, f) and forces_star(P, p, f)


def test_antichain_example():
    P = antichain_below_top()
    x = PName([(ZERO, "a")])
    names = {X: x}
    neg = parse("(not (exists e (and (forall w (not (in w e))) (in e x))))", S)
    assert forces_semantic(P, "a", IN0, names)
    assert forces_semantic(P, "b", neg, names)
    assert not forces_semantic(P, "1", IN0, names) and not forces_semantic(P, "1", neg, names)
    for p in P.elements:
        assert forces_recursive(P, p, IN0, names) == forces_star(P, p, IN0, names) == (p == "a")
    assert boolean_value(P, IN0, names) == {"a"}


def test_valid_formula_has_value_one():
    P = posets_up_to_iso(4)[4]
    f = parse("(forall u (or (in u u) (not (in u u))))", S)
    assert boolean_value(P, f) == frozenset(P.minimal)


@pytest.fixture(scope="module")
def small_grid():
    report = GridReport()
    for P in posets_up_to_iso(3):
        check_poset(P, formula_corpus(), report)
    return report


def test_small_grid_agrees(small_grid):
    assert small_grid.cells > 10000
    assert small_grid.disagreements == []
    assert small_grid.truth_lemma_failures == []


def test_small_grid_structure(small_grid):
    assert small_grid.persistence_failures == []
    assert small_grid.undecided_at_minimal == []
    assert small_grid.complement_failures == []


def test_fallback_value_is_unreachable(small_grid):
    # the "otherwise ‖φ‖ = 1" branch needs a missing forcing relation
    assert small_grid.missing_relations == 0


def test_fallback_value_is_one():
    P = antichain_below_top()
    F = Forcing(P)
    F._relations[IN0] = None
    x = PName([(ZERO, "a")])
    assert F.boolean_value(IN0, {X: x}) == frozenset(P.minimal)


def test_modus_ponens_sample():
    P = antichain_below_top()
    F = Forcing(P)
    corpus = formula_corpus()
    for f in corpus[:10]:
        for g in corpus[:10]:
            imp = Implies(f, g)
            for names in ({X: a, Y: b} for a in F.pool[:4] for b in F.pool[:4]):
                for p in P.elements:
                    if F.forces_semantic(p, f, names) and F.forces_semantic(p, imp, names):
                        assert F.forces_semantic(p, g, names)


def test_negation_at_a_minimal_element():
    P = antichain_below_top()
    F = Forcing(P)
    (G,) = [G for G in F.filters if "b" in G]
    x = PName([(ZERO, "a")])
    neg = parse("(not (exists e (and (forall w (not (in w e))) (in e x))))", S)
    assert F.forces_recursive("b", neg, {X: x}) == F.truth(G, neg, {X: x})
