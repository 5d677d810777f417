import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from satrel.semantics import Structure, hf_membership_structure
from satrel.sequent import (
    CounterInterpretation,
    NotFoundWithinDepth,
    Proof,
    Sequent,
    StepBudgetExceeded,
    Subvaluation,
    check_proof,
    check_subvaluation,
    derivable,
    eliminate_cuts,
    eval_sequent,
    interpretation_satisfies,
    proof_to_sexpr,
    prove_lkminus,
    read_proof_file,
    subformula_property,
)
from satrel.syntax import And, Atom, Iff, Implies, Neg, Or, S, Variable, parse

from corpus import (
    P,
    cut,
    cut_corpus,
    f,
    found,
    lem_via_cut,
    peirce_proof,
    rule,
    seq,
    stacked_cuts,
)

ATOMS = ("p", "q", "r")


def truth(g, env):
    """Independent truth-table evaluator for propositional formulas."""
    if isinstance(g, Atom):
        return env[g.pred]
    if isinstance(g, Neg):
        return not truth(g.body, env)
    a, b = truth(g.left, env), truth(g.right, env)
    return {And: a and b, Or: a or b, Implies: (not a) or b, Iff: a == b}[type(g)]


def tt_valid(sq):
    for bits in itertools.product((False, True), repeat=len(ATOMS)):
        env = dict(zip(ATOMS, bits))
        if all(truth(g, env) for g in sq.ante) and not any(truth(g, env) for g in sq.succ):
            return False
    return True


def prop_formulas(max_leaves=4):
    leaf = st.sampled_from([Atom(a) for a in ATOMS])
    return st.recursive(
        leaf,
        lambda ch: st.one_of(
            ch.map(Neg),
            st.tuples(st.sampled_from([And, Or, Implies, Iff]), ch, ch).map(lambda x: x[0](x[1], x[2])),
        ),
        max_leaves=max_leaves,
    )


# ------------------------------------------------------------ checker


def test_initial_sequent_both_modes():
    p = rule("init", ["p"], ["p"])
    assert check_proof(p, "LK") and check_proof(p, "LKminus")


def test_cut_rejected_in_lkminus():
    c = lem_via_cut()
    assert check_proof(c, "LK")
    verdict = check_proof(c, "LKminus")
    assert not verdict and "cut" in verdict.certificate


def test_golden_peirce():
    p = peirce_proof()
    assert p.size() == 20
    assert check_proof(p, "LK")
    assert isinstance(prove_lkminus(p.concl, 0), Proof)


def test_bad_inferences_are_located():
    good = rule("weakR", ["p"], ["p", "q"], rule("init", ["p"], ["p"]))
    bad = rule("impR", [], ["(implies p r)"], good)
    verdict = check_proof(bad)
    assert not verdict and verdict.path == () and verdict.rule == "impR"
    deep = rule("exchR", ["p"], ["q", "p"], rule("weakR", ["p"], ["p", "r"], rule("init", ["p"], ["p"])), index=0)
    verdict = check_proof(deep)
    assert not verdict and verdict.path == () and "exchange" in verdict.reason
    wrong_index = rule("exchR", ["p"], ["q", "p"], good, index=1)
    assert not check_proof(wrong_index)


def test_eigenvariable_condition():
    u = Variable("u")
    leaf = rule("init", ["(in u v)"], ["(in u v)"], sig=S)
    # ∀u. u∈v  ⇒  (in u v) with eigenvariable u free below: invalid
    bad = Proof("allR", seq(["(in u v)"], ["(forall u (in u v))"], S), [leaf], {"eigen": u})
    assert not check_proof(bad)
    ok = Proof(
        "allR",
        seq(["(forall w (in w v))"], ["(forall u (in u v))"], S),
        [Proof("allL", seq(["(forall w (in w v))"], ["(in u v)"], S), [leaf], {"term": u})],
        {"eigen": u},
    )
    assert check_proof(ok, "LKminus")


def test_alpha_equivalent_formulas_accepted():
    leaf = rule("init", ["(forall u (in u v))"], ["(forall w (in w v))"], sig=S)
    assert check_proof(leaf)


def test_identity_leaves():
    assert check_proof(rule("eq", [], ["(= u u)"], sig=S))
    assert check_proof(rule("eq", ["(= u v)", "(in u w)"], ["(in v w)"], sig=S))
    assert not check_proof(rule("eq", ["(in u w)"], ["(in v w)"], sig=S))
    assert not check_proof(rule("eq", [], ["(not (= u u))"], sig=S))


# ------------------------------------------------------------ subformula property


def test_subformula_property():
    for p in (found([], ["(implies p p)"]), found(["(forall u (in u v))"], ["(in w v)"], S)):
        assert subformula_property(p)
    # a cut on q, which does not occur in ⇒ p → p
    pq = found([], ["(implies p p)", "q"])
    qp = found(["q"], ["(implies p p)"])
    c = cut(pq, qp, seq([], ["(implies p p)"]))
    assert check_proof(c) and not subformula_property(c)


# ------------------------------------------------------------ cut elimination


def test_cut_free_input_unchanged():
    p = found([], ["(or p (not p))"])
    assert eliminate_cuts(p) is p


def test_lem_via_cut():
    c = lem_via_cut()
    e = eliminate_cuts(c)
    assert e.is_cut_free() and check_proof(e, "LKminus")
    assert e.concl == c.concl
    assert isinstance(prove_lkminus(c.concl), Proof)


def test_stacked_cuts():
    c = stacked_cuts()
    assert c.count("cut") >= 2
    e = eliminate_cuts(c)
    assert check_proof(e, "LKminus") and subformula_property(e) and e.concl == c.concl


def test_cut_corpus_eliminated():
    for c in cut_corpus():
        e = eliminate_cuts(c)
        assert check_proof(e, "LKminus"), check_proof(e, "LKminus").certificate
        assert e.concl == c.concl
        assert subformula_property(e)


def test_step_budget():
    with pytest.raises(StepBudgetExceeded):
        eliminate_cuts(peirce_proof(), budget=1)


# ------------------------------------------------------------ search


def test_search_examples():
    assert isinstance(prove_lkminus(seq([], ["(implies p p)"])), Proof)
    r = prove_lkminus(seq([], ["p"]))
    assert isinstance(r, CounterInterpretation)
    assert r.subvaluation.get(f("p")) is False
    assert check_subvaluation(r.structure, r.subvaluation)
    assert not interpretation_satisfies(r.structure, r.subvaluation, r.sequent, r.assignment)


def test_search_depth_exhaustion():
    r = prove_lkminus(seq([], ["(exists u (forall w (in w u)))"], S), 1)
    assert isinstance(r, NotFoundWithinDepth) and r.depth == 1


def test_two_atoms_exhaustive_small():
    # every formula over p, q with at most 2 connectives, as ⇒ φ and φ ⇒
    atoms = [Atom("p"), Atom("q")]
    level = [atoms]
    for n in range(1, 3):
        new = [Neg(g) for g in level[n - 1]]
        for k in range(n):
            for a in level[k]:
                for b in level[n - 1 - k]:
                    new += [c(a, b) for c in (And, Or, Implies, Iff)]
        level.append(new)
    for g in itertools.chain(*level):
        for sq in (Sequent([], [g]), Sequent([g], [])):
            d = derivable(sq, 0)
            assert d == tt_valid(sq)


@settings(max_examples=150, deadline=None)
@given(st.lists(prop_formulas(), max_size=2), st.lists(prop_formulas(), min_size=1, max_size=2))
def test_search_matches_truth_tables(ante, succ):
    sq = Sequent(ante, succ)
    r = prove_lkminus(sq, 0)
    if tt_valid(sq):
        assert isinstance(r, Proof) and check_proof(r, "LKminus") and r.concl == sq
    else:
        assert isinstance(r, CounterInterpretation)
        assert check_subvaluation(r.structure, r.subvaluation)
        assert not interpretation_satisfies(r.structure, r.subvaluation, sq, r.assignment)


def test_first_order_counter_model():
    sq = seq(["(exists u (in u v))"], ["(in v v)"], S)
    r = prove_lkminus(sq, 3)
    assert isinstance(r, CounterInterpretation)
    assert check_subvaluation(r.structure, r.subvaluation)
    assert not interpretation_satisfies(r.structure, r.subvaluation, sq, r.assignment)
    assert not eval_sequent(r.structure, sq, r.assignment)


def test_identity_corpus():
    for ante, succ in [
        ([], ["(forall u (forall v (implies (= u v) (= v u))))"]),
        (["(= u v)", "(= v w)"], ["(= u w)"]),
        (["(= u v)", "(forall w (in w u))"], ["(in v v)"]),
        ([], ["(forall u (exists v (= u v)))"]),
    ]:
        p = found(ante, succ, S)
        assert check_proof(p, "LKminus")
        for st_ in (hf_membership_structure(2), hf_membership_structure(3)):
            from satrel.semantics import all_assignments

            for a in all_assignments(st_, p.concl.free_vars()):
                assert eval_sequent(st_, p.concl, a)
    assert isinstance(prove_lkminus(seq(["(in u v)"], ["(= u v)"], S), 2), CounterInterpretation)


# ------------------------------------------------------------ evaluation and subvaluations


def test_eval_sequent_examples():
    v3 = hf_membership_structure(3)
    assert eval_sequent(v3, seq([], ["(forall u (= u u))"], S))
    assert not eval_sequent(v3, seq([], ["(exists u (not (= u u)))"], S))
    prop = Structure({"set": ["*"]}, {"p": set(), "q": {()}}, name="pq")
    assert eval_sequent(prop, seq(["p"], ["p"]))
    assert not eval_sequent(prop, seq(["q"], ["p"]))


def test_eval_sequent_matches_models_star():
    from satrel.semantics import all_assignments, models_star

    v3 = hf_membership_structure(3)
    rng = random.Random(5)
    from helpers import random_formula

    for _ in range(30):
        a, b = random_formula(rng, 3), random_formula(rng, 3)
        sq = Sequent([a], [b])
        for asg in all_assignments(v3, sq.free_vars()):
            want = not (models_star(v3, a, asg.restrict(a_fv(a))) and not models_star(v3, b, asg.restrict(a_fv(b))))
            assert eval_sequent(v3, sq, asg) == want


def a_fv(g):
    from satrel.syntax import free_vars

    return free_vars(g)


def test_subvaluation_clauses():
    st_ = Structure({"set": ["*"]}, {"p": {()}, "q": set()}, name="pq")
    V = Subvaluation(st_)
    assert check_subvaluation(st_, V)
    V.set(f("(or p q)"), {}, True)
    V.set(f("p"), {}, True)
    assert check_subvaluation(st_, V)
    W = Subvaluation(st_)
    W.set(f("(or q r)"), {}, False)
    W.set(f("q"), {}, False)
    verdict = check_subvaluation(st_, W)
    assert not verdict and "(or q r)" in verdict.certificate


def test_subvaluation_quantifiers():
    v2 = hf_membership_structure(2)
    V = Subvaluation(v2)
    g = parse("(exists u (in u v))", S)
    e, one = v2.carrier()
    V.set(g, {Variable("v"): one}, True)
    assert not check_subvaluation(v2, V)
    V.set(parse("(in u v)", S), {Variable("u"): e, Variable("v"): one}, True)
    assert check_subvaluation(v2, V)


# ------------------------------------------------------------ file format


def test_proof_file_round_trip():
    for p in [peirce_proof(), found(["(forall u (in u v))"], ["(in w v)"], S)]:
        sig = "S"
        header = '+++\nsignature = "S"\natoms = ["p", "q", "r"]\n+++\n'
        text = header + proof_to_sexpr(p)
        q, _, _ = read_proof_file(text)
        assert proof_to_sexpr(q) == proof_to_sexpr(p)
        assert check_proof(q, "LK")


@settings(max_examples=100, deadline=None)
@given(st.lists(prop_formulas(5), max_size=2), st.lists(prop_formulas(5), max_size=2))
def test_prop_decider_matches_search(ante, succ):
    from satrel.sequent import PropDecider, PropTable

    t = PropTable(ATOMS)
    a = [t.from_formula(g) for g in ante]
    s = [t.from_formula(g) for g in succ]
    d = PropDecider(t).derivable(a, s)
    sq = Sequent(ante, succ)
    assert d == t.valid(a, s) == tt_valid(sq) == derivable(sq, 0)


# ------------------------------------------------------------ exhaustive sweeps


def _orbits(formula_lists):
    """Distinct formulas or sequents up to renaming p, q, r, by brute force on text."""
    import re

    maps = [dict(zip("pqr", perm)) for perm in itertools.permutations("pqr")]
    out = set()
    for item in formula_lists:
        out.add(min(tuple(tuple(sorted(re.sub(r"\b[pqr]\b", lambda m: mp[m.group(0)], x) for x in side))
                          for side in item) for mp in maps))
    return out


def _texts(max_connectives, connectives=("and", "or", "implies", "iff")):
    layers = [["p", "q", "r"]]
    for n in range(1, max_connectives + 1):
        layer = [f"(not {a})" for a in layers[n - 1]]
        for k in range(n):
            layer += [f"({c} {a} {b})" for a in layers[k] for b in layers[n - 1 - k] for c in connectives]
        layers.append(layer)
    return layers


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_exhaustive_check_counts_orbits(n):
    from satrel.sequent.propositional import exhaustive_check, AND, OR, IMP, IFF

    count, bad = exhaustive_check(n, (AND, OR, IMP, IFF))
    texts = [x for layer in _texts(n) for x in layer]
    assert bad == []
    assert count == len(_orbits([((), (x,)) for x in texts]))


def test_exhaustive_sequents_counts_orbits():
    from satrel.sequent.propositional import exhaustive_sequents

    count, bad = exhaustive_sequents(1)
    layers = _texts(1)
    atom_sets = [c for r in range(4) for c in itertools.combinations("pqr", r)]
    items = []
    for extra in [((), ())] + [((x,), ()) for x in layers[1]] + [((), (x,)) for x in layers[1]]:
        for la in atom_sets:
            for ra in atom_sets:
                items.append((set(la) | set(extra[0]), set(ra) | set(extra[1])))
    assert bad == []
    assert count == len(_orbits(items))


def test_exhaustive_check_reports_disagreement(monkeypatch):
    from satrel.sequent import propositional

    monkeypatch.setattr(propositional.PropDecider, "derivable", lambda self, a, s: True)
    _, bad = propositional.exhaustive_check(1)
    assert bad and all(isinstance(g, (Atom, Neg, And, Or, Implies)) for g in bad)
