import pytest
from hypothesis import given, settings, strategies as st

from corpus import (
    CLASS_CUTS,
    CLASS_FOUND,
    EXT,
    S_THROUGH_CLASS,
    SUBSET_EXISTS,
    T1,
    class_corpus,
    found,
    s_through_class_corpus,
    sep,
)
from satrel.encoding import encode
from satrel.hf import HfSet, kpair, ordinal, rank, stage, transitive_closure
from satrel.semantics import Structure, evaluate, hf_membership_structure, membership_structure
from satrel.sequent import Proof, Sequent, check_proof, prove_lkminus
from satrel.syntax import C, C_STAR, CLASS, S, S_STAR, Forall, Variable, free_vars, is_closed, parse, print_expr
from satrel.syntax.ops import instantiate_collection, instantiate_comprehension
from satrel.theories import (
    AXIOMS,
    Lang,
    QuantifiedClassVariable,
    ReAxiomatization,
    ShapeError,
    build_theta_prime,
    class_var,
    eliminate_class_terms,
    eliminate_with_report,
    enumerating,
    instantiate_theta_phi,
    is_class_free,
    is_comprehension_instance,
    item,
    never,
    read_theory,
    satisfaction_table_formula,
    theory_library,
    zf_code,
)
from satrel.theories.library import formula_code
from satrel.theories.pstar import has_class, rewrite
from satrel.util import deep_recursion

x, y, n, v = (Variable(c) for c in "xynv")
u = Variable("u")
V3 = hf_membership_structure(3)


def with_class(carrier, cls):
    return Structure({"set": carrier, "class": [cls]}, {"in": lambda a, b: a in b, "class-in": lambda a, X: a in X})


def closed_carrier(*sets):
    return frozenset(transitive_closure(sets)) | frozenset(sets)


# ------------------------------------------------------------ θ′


@pytest.fixture(scope="module")
def theta_ext():
    return build_theta_prime(enumerating(parse(EXT, S)))


def test_theta_prime_is_a_class_sentence(theta_ext):
    assert isinstance(theta_ext, Forall) and theta_ext.var.sort == CLASS
    with deep_recursion():
        assert free_vars(theta_ext) == frozenset()
        text = print_expr(theta_ext)
        assert parse(text, C) == theta_ext


def test_never_gives_a_vacuous_sentence():
    tp = build_theta_prime(never())
    th = instantiate_theta_phi(tp, parse("(= v v)", S))
    assert is_class_free(th)
    with deep_recursion():
        assert evaluate(V3, th)


def test_theta_phi_from_a_satisfaction_table(theta_ext):
    phi = satisfaction_table_formula(V3, 2)
    th = instantiate_theta_phi(theta_ext, phi)
    with deep_recursion():
        assert is_class_free(th) and is_closed(th)
        assert evaluate(V3, th)


def test_theta_body_with_empty_class(theta_ext):
    S_ = theta_ext.var
    with deep_recursion():
        assert evaluate(with_class(V3.carrier(), frozenset()), theta_ext.body, {S_: frozenset()})


@settings(max_examples=8, deadline=None)
@given(st.lists(st.sampled_from(sorted(AXIOMS)), min_size=1, max_size=3))
def test_enumerated_theta_prime_is_closed(names):
    tp = build_theta_prime(enumerating(*[parse(AXIOMS[k], S) for k in names]))
    with deep_recursion():
        assert free_vars(tp) == frozenset()


def test_reaxiomatization_shape():
    with pytest.raises(ValueError):
        ReAxiomatization(parse("(exists z (in z x))", S))
    with pytest.raises(ValueError):
        ReAxiomatization(parse("(in x w)", S))
    ReAxiomatization(parse("(exists z (and (in z y) (in z x)))", S))


def test_instantiate_rejects_bad_input(theta_ext):
    with pytest.raises(ShapeError):
        instantiate_theta_phi(parse(EXT, S), parse("(= v v)", S))
    with pytest.raises(ShapeError):
        instantiate_theta_phi(theta_ext, parse("(in u v)", S))
    with pytest.raises(ShapeError):
        instantiate_theta_phi(theta_ext, parse("(class-in v X:class)", C))
    nested = Forall(class_var("S"), Forall(class_var("T"), parse("(= v v)", S)))
    with pytest.raises(ShapeError):
        instantiate_theta_phi(nested, parse("(= v v)", S))


def test_empty_table_is_never_true():
    st1 = hf_membership_structure(1)
    phi = satisfaction_table_formula(st1, 3)
    assert print_expr(phi) == "(not (= v v))"


# ------------------------------------------------------------ object-language helpers


def test_natural_numbers_on_stage_three():
    L = Lang()
    nat = L.natural(n)
    naturals = {ordinal(k) for k in range(4)}
    for a in V3.carrier():
        assert evaluate(V3, nat, {n: a}) == (a in naturals)


def test_rank_below_with_witnesses():
    L = Lang()
    rb = L.rank_below(x, n)
    for a in stage(2):
        tc = transitive_closure([a]) | {a}
        w = HfSet.of([kpair(z, ordinal(rank(z))) for z in tc])
        st1 = membership_structure(closed_carrier(w, ordinal(3)))
        for k in range(4):
            assert evaluate(st1, rb, {x: a, n: ordinal(k)}) == (rank(a) < k)


def test_dag_constant_picks_out_one_set():
    e = encode(parse(EXT, S))
    car = closed_carrier(e)
    with deep_recursion():
        d = Lang().dag_const(x, e)
        hits = [a for a in car if evaluate(membership_structure(car), d, {x: a})]
    assert hits == [e]


def test_satisfaction_clauses_on_tailored_structures():
    S_, psi, A = class_var(), Variable("psi"), Variable("A")
    with deep_recursion():
        clauses = Lang().clauses(S_, psi, A)
        for text in ["(in u v)", "(= u v)", "(not (in u v))"]:
            g = parse(text, S)
            codes = [encode(g)] + ([encode(g.body)] if text.startswith("(not") else [])
            for a in (ordinal(0), ordinal(1)):
                for b in (ordinal(0), ordinal(1)):
                    Ac = HfSet.of([kpair(encode(u), a), kpair(encode(v), b)])
                    pairs = [kpair(c, Ac) for c in codes]
                    car = closed_carrier(*codes, Ac, *pairs)
                    for mask in range(1 << len(pairs)):
                        cls = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
                        got = evaluate(with_class(car, cls), clauses, {S_: cls, psi: codes[0], A: Ac})
                        here = pairs[0] in cls
                        if text == "(in u v)":
                            want = here == (a in b)
                        elif text == "(= u v)":
                            want = here == (a == b)
                        else:
                            want = here == (pairs[1] not in cls)
                        assert got == want, (text, a, b, mask)


def test_formula_code_accepts_subformula_codes():
    g = parse("(in u v)", S)
    s = HfSet.of([encode(g)])
    car = closed_carrier(s)
    t = Variable("t")
    with deep_recursion():
        fc = formula_code(Lang(), t)
        hits = [a for a in car if evaluate(membership_structure(car), fc, {t: a})]
    assert hits == [encode(g)]


# ------------------------------------------------------------ class-term elimination


def test_class_corpus_size():
    assert len(class_corpus()) >= 10


@pytest.mark.parametrize("k", range(len(CLASS_FOUND) + len(CLASS_CUTS)))
def test_elimination_gives_an_s_proof(k):
    p = class_corpus()[k]
    assert check_proof(p, "LK")
    out, report = eliminate_with_report(p)
    assert check_proof(out, "LK")
    assert not any(has_class(g) for node in out.nodes() for g in node.concl.formulas())
    # the succedent is the unfolded original; class premises are discharged or replaced
    assert len(out.concl.succ) == len(p.concl.succ)
    assert len(report.replaced) + len(report.discharged) == sum(has_class(g) for g in p.concl.ante)


def test_class_free_proof_is_unchanged():
    p = found(["(in u v)"], ["(exists w (in w v))"], S)
    assert eliminate_class_terms(p) is p


def test_membership_premise_is_discharged():
    out = eliminate_class_terms(class_corpus()[0])
    assert out.concl == Sequent([], [parse("(= u u)", S)])


def test_separation_becomes_comprehension():
    p = found([sep(T1)], [SUBSET_EXISTS], C)
    out, report = eliminate_with_report(p)
    assert report.discharged == []
    (premise, s_premise), = report.replaced
    assert is_comprehension_instance(s_premise, parse("(not (in z y))", S))
    assert out.concl.ante == (s_premise,)


def test_class_identity_leaf_is_reproved():
    _, report = eliminate_with_report(class_corpus()[2])
    assert report.reproved_leaves >= 1


def test_quantified_class_variable_is_rejected():
    g = parse("(forall X:class (class-in u X:class))", C)
    p = prove_lkminus(Sequent([g], [g]), 1)
    assert isinstance(p, Proof)
    with pytest.raises(QuantifiedClassVariable):
        eliminate_class_terms(p)


def test_rewrite_unfolds_terms():
    g = parse(f"(class-in u {T1})", C)
    assert rewrite(g) == parse("(not (in u y))", S)


# ------------------------------------------------------------ library


@pytest.fixture(scope="module")
def library():
    return theory_library()


def test_library_theories(library):
    assert set(library) == {"S", "ZF", "C", "GB", "Theta", "Theta'"}
    assert not library["S"].infinity and library["ZF"].infinity
    assert "Infinity" not in library["S"].labels and "Infinity" in library["ZF"].labels
    assert not library["C"].infinity and library["GB"].infinity
    for t in library.values():
        assert all(is_closed(s) for s in t.explicit)


def test_partial_order_item_mentions_p(library):
    g = item(library["Theta"], "4")
    assert print_expr(g).startswith("(and (V P) ")
    with deep_recursion():
        assert parse(print_expr(g), S_STAR) == g


def test_zf_in_v_item(library):
    g = item(library["Theta'"], "3'")
    assert isinstance(g, Forall) and g.var.sort == CLASS and is_closed(g)
    with deep_recursion():
        assert parse(print_expr(g), C_STAR) == g


def test_generators_at_a_fixed_formula(library):
    psi = parse("(in z y)", S)
    comp, coll = library["ZF"].generators
    assert comp.instantiate(psi) == instantiate_comprehension(psi)
    assert coll.instantiate(psi) == instantiate_collection(psi)
    assert instantiate_comprehension(psi) in comp.instances(0)


def test_zf_code_is_a_formula_of_x():
    with deep_recursion():
        assert free_vars(zf_code(Lang(), x)) == {x}


def test_read_theory_file():
    text = "+++\nsignature = \"s\"\n+++\n" + EXT + "\n(schema comprehension (in z y))\n"
    t = read_theory(text)
    assert t.explicit == [parse(EXT, S)]
    assert t.sentences() == [parse(EXT, S), instantiate_comprehension(parse("(in z y)", S))]
    with pytest.raises(ValueError):
        read_theory("(schema replacement (in z y))")


@pytest.mark.parametrize("k", range(len(S_THROUGH_CLASS)))
def test_s_endsequent_is_kept(k):
    p = s_through_class_corpus()[k]
    assert any(has_class(g) for node in p.nodes() for g in node.concl.formulas())
    out = eliminate_class_terms(p)
    assert out.concl == p.concl
    assert check_proof(out, "LK")
    assert not any(has_class(g) for node in out.nodes() for g in node.concl.formulas())
