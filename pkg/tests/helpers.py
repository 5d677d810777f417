"""Shared generators for tests."""

import random

from hypothesis import strategies as st

from satrel.syntax import (
    And,
    Atom,
    Equal,
    Exists,
    Forall,
    Iff,
    Implies,
    Neg,
    Or,
    Variable,
    Apply,
)

U, V, W = Variable("u"), Variable("v"), Variable("w")
VARS = (U, V, W)


def terms(vs=VARS, with_ops=False):
    base = st.sampled_from(vs)
    if not with_ops:
        return base
    leaves = st.one_of(base, st.just(Apply("empty")))
    return st.recursive(
        leaves, lambda t: st.builds(lambda a, b: Apply("adjoin", (a, b)), t, t), max_leaves=4
    )


def formulas(vs=VARS, with_ops=False, max_leaves=8):
    t = terms(vs, with_ops)
    atoms = st.one_of(
        st.builds(lambda a, b: Atom("in", (a, b)), t, t),
        st.builds(Equal, t, t),
    )

    def extend(inner):
        return st.one_of(
            st.builds(Neg, inner),
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Implies, inner, inner),
            st.builds(Iff, inner, inner),
            st.builds(Exists, st.sampled_from(vs), inner),
            st.builds(Forall, st.sampled_from(vs), inner),
        )

    return st.recursive(atoms, extend, max_leaves=max_leaves)


def random_formula(rng: random.Random, depth: int, vs=VARS, quantifiers=True):
    if depth == 0 or rng.random() < 0.25:
        a, b = rng.choice(vs), rng.choice(vs)
        return Atom("in", (a, b)) if rng.random() < 0.7 else Equal(a, b)
    k = rng.randrange(7 if quantifiers else 5)
    if k == 0:
        return Neg(random_formula(rng, depth - 1, vs, quantifiers))
    if k <= 4:
        c = (And, Or, Implies, Iff)[k - 1]
        return c(random_formula(rng, depth - 1, vs, quantifiers), random_formula(rng, depth - 1, vs, quantifiers))
    q = Exists if k == 5 else Forall
    return q(rng.choice(vs), random_formula(rng, depth - 1, vs, quantifiers))
