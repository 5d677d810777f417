from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from satrel.hf import (
    StageTooLarge,
    adjoin,
    empty,
    hf,
    kpair,
    ordinal,
    parse_literal,
    rank,
    stage,
    unpair,
)
from satrel.encoding import (
    NotAnExpression,
    ackermann,
    ackermann_inverse,
    canonical_name,
    decode,
    encode,
    hf_value,
    phi_class,
)
from satrel.syntax import S, parse, subformulas, children
from satrel.semantics import eval_term, standard_hf_structure

from helpers import formulas


def as_frozen(x):
    return frozenset(as_frozen(c) for c in x.children)


def frozen_rank(f):
    return 0 if not f else 1 + max(frozen_rank(c) for c in f)


def test_empty():
    e = empty()
    assert rank(e) == 0 and len(e) == 0
    assert empty() is e
    assert e not in e


def test_adjoin():
    e = empty()
    one = adjoin(e, e)
    assert one == hf(e)
    assert adjoin(one, e) is one
    two = adjoin(one, one)
    assert two == hf(e, hf(e)) and rank(two) == 2


def test_rank_examples():
    assert rank(hf(empty())) == 1
    assert rank(hf(empty(), hf(empty()))) == 2


def test_stage_sizes_and_cap():
    assert stage(0) == ()
    assert set(stage(2)) == {empty(), hf(empty())}
    # independent powerset iteration on frozensets
    level = [frozenset()]
    levels = [[]]
    for _ in range(4):
        cur = levels[-1]
        nxt = [frozenset(c) for k in range(len(cur) + 1) for c in combinations(cur, k)]
        levels.append(nxt)
    assert [len(x) for x in levels] == [0, 1, 2, 4, 16]
    assert len(stage(5)) == 2 ** 16 == 65536
    assert {as_frozen(x) for x in stage(4)} == set(levels[4])
    with pytest.raises(StageTooLarge):
        stage(6)


def test_stage_nesting_and_rank():
    for n in range(5):
        small = set(stage(n))
        assert small <= set(stage(n + 1))
        for x in stage(n + 1):
            assert (x in small) == (rank(x) < n)


def test_canonicity_different_orders():
    e = empty()
    one, two = hf(e), hf(e, hf(e))
    a = adjoin(adjoin(adjoin(e, two), one), e)
    b = adjoin(adjoin(adjoin(e, e), two), one)
    c = hf(one, e, two, one)
    assert a is b is c
    kids = a.children
    assert all(kids[i] < kids[i + 1] for i in range(len(kids) - 1))


@given(st.lists(st.integers(0, 15), max_size=6), st.randoms())
def test_canonicity_random(idx, rnd):
    pool = stage(4)
    elems = [pool[i] for i in idx]
    x = empty()
    for y in elems:
        x = adjoin(x, y)
    shuffled = list(elems)
    rnd.shuffle(shuffled)
    y = hf(*shuffled)
    assert x is y
    assert as_frozen(x) == frozenset(as_frozen(e) for e in elems)


def test_literal_round_trip():
    assert str(empty()) == "{}"
    x = parse_literal("{{} {{}}}")
    assert x == hf(empty(), hf(empty()))
    assert parse_literal("{ {{}}  {} }") is x
    for x in stage(4):
        assert parse_literal(str(x)) is x
    with pytest.raises(ValueError):
        parse_literal("{{}")


def test_pairs_and_ordinals():
    for a in stage(3):
        for b in stage(3):
            assert unpair(kpair(a, b)) == (a, b)
    assert unpair(empty()) is None
    assert ordinal(3) == hf(ordinal(0), ordinal(1), ordinal(2))
    assert ordinal(3).is_ordinal() and not hf(hf(empty())).is_ordinal()


def test_ackermann_bijection():
    for n in range(300):
        assert ackermann_inverse(ackermann(n)) == n
    assert {ackermann(n) for n in range(16)} == set(stage(4))


def test_encode_decode_examples():
    f = parse("(forall u (= u u))", S)
    assert decode(encode(f)) == f
    g = parse("(not (forall u (= u u)))", S)
    assert rank(encode(g)) > rank(encode(f))
    assert decode(empty()) is NotAnExpression
    assert decode(hf(empty())) is NotAnExpression


def test_rank_of_atom_matches_oracle():
    f = parse("(in u v)", S)
    x = encode(f)
    assert rank(x) == frozen_rank(as_frozen(x))


def _all_subexpressions(e):
    out = [e]
    for c in children(e):
        out.extend(_all_subexpressions(c))
    if hasattr(e, "var"):
        out.append(e.var)
    return out


@settings(max_examples=150, deadline=None)
@given(formulas(with_ops=True))
def test_encoding_round_trip_and_rank_monotone(f):
    x = encode(f)
    assert decode(x) == f
    for sub in _all_subexpressions(f)[1:]:
        assert rank(encode(sub)) < rank(x)


def test_decode_rejects_all_small_sets():
    # every set of rank < 5 is outside the image (the cheapest formula has rank 17)
    assert phi_class(5) == []
    assert all(decode(x) is NotAnExpression for x in stage(4))


def test_canonical_names():
    assert str(canonical_name(empty()).term) == "empty"
    assert str(canonical_name(hf(empty())).term) == "(adjoin empty empty)"
    hfs = standard_hf_structure()
    target = hf(empty(), hf(empty()))
    assert eval_term(hfs, canonical_name(target).term, {}) is target
    for x in stage(4):
        n = canonical_name(x)
        assert n.target is x
        assert canonical_name(x).term == n.term
        assert eval_term(hfs, n.term, {}) is x
        assert hf_value(n.term) is x
