"""Machine-readable presentations of the set and class theories in play.

Theories are finite fragments: explicit sentences plus schema generators
that produce instances on demand.  ``Infinity`` is a flag: S and C omit it
and ZF and GB add it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..encoding import _enc_str, encode
from ..sexpr import read_all, split_header
from ..syntax import C, S, parse, sexpr_to_formula
from ..syntax.ast import CLASS, And, Apply, Atom, Equal, Exists, Forall, Formula, Iff, Implies, Variable
from ..syntax.ast import class_member, conj, disj, member
from ..syntax.ops import (
    bexists,
    bforall,
    instantiate_collection,
    instantiate_comprehension,
    ord_formula,
    relativize,
)
from ..syntax.theory import SchemaGenerator, Theory, enumerate_formulas
from ..util import deep_recursion
from .objlang import Lang, class_var

AXIOMS = {
    "Extensionality": "(forall u (forall v (implies (forall w (iff (in w u) (in w v))) (= u v))))",
    "Pair": "(forall u (forall u1 (exists v (forall w (iff (in w v) (or (= w u) (= w u1)))))))",
    "Union": "(forall u (exists v (forall w (iff (in w v) (exists e (and (in e u) (in w e)))))))",
    "Power": "(forall u (exists v (forall w (iff (in w v) (forall e (implies (in e w) (in e u)))))))",
    "Foundation": "(forall x (implies (exists w (in w x)) (exists w (and (in w x) (forall e (implies (in e w) (not (in e x))))))))",
    "Infinity": "(exists x (and (exists e (and (in e x) (forall w (not (in w e)))))"
                " (forall e (implies (in e x) (exists s (and (in s x) (forall w (iff (in w s) (or (in w e) (= w e))))))))))",
}

CLASS_AXIOMS = {
    "Class extensionality": "(forall X:class (forall Y:class (implies (forall z (iff (class-in z X:class) (class-in z Y:class))) (= X:class Y:class))))",
    "Separation": "(forall X:class (forall x (exists x1 (forall z (iff (in z x1) (and (in z x) (class-in z X:class)))))))",
}


def axiom(name: str) -> Formula:
    return parse(AXIOMS[name], S)


@dataclass(frozen=True)
class Schema:
    """A schema with one formula slot; ``build`` turns the slot formula into a sentence."""

    label: str
    build: object
    slot_vars: tuple = ("z", "y")

    def instantiate(self, psi: Formula) -> Formula:
        return self.build(psi)

    def instances(self, max_connectives: int = 1, preds=("in",)) -> list:
        vs = tuple(Variable(v) for v in self.slot_vars)
        return [self.build(psi) for psi in enumerate_formulas(vs, max_connectives, preds=preds, quantifiers=False)]


def comprehension_schema() -> Schema:
    return Schema("Comprehension", instantiate_comprehension)


def collection_schema() -> Schema:
    return Schema("Collection", instantiate_collection, ("z", "beta", "y"))


def relativized(schema: Schema, pred: str = "V") -> Schema:
    return Schema(f"{schema.label}^{pred}", lambda psi: relativize(schema.build(psi), pred), schema.slot_vars)


def class_comprehension_schema() -> Schema:
    """∀y ∃X ∀z (z ∈ X ↔ ψ(z, y)) for ψ without class quantifiers."""
    X, z, y = Variable("X", CLASS), Variable("z"), Variable("y")

    def build(psi):
        return Forall(y, Exists(X, Forall(z, Iff(class_member(z, X), psi))))

    return Schema("Class comprehension", build)


def _set_theory(name, infinity):
    names = [n for n in AXIOMS if n != "Infinity" or infinity]
    return Theory(
        name,
        [axiom(n) for n in names],
        [comprehension_schema(), collection_schema()],
        labels=names,
        infinity=infinity,
    )


def _class_theory(name, infinity):
    base = _set_theory(name, infinity)
    labels = list(base.labels) + list(CLASS_AXIOMS)
    sentences = list(base.explicit) + [parse(t, C) for t in CLASS_AXIOMS.values()]
    return Theory(name, sentences, [class_comprehension_schema(), collection_schema()], labels=labels,
                  infinity=infinity)


# ------------------------------------------------------------ forcing theories

P_CONST = Apply("P", ())
G_CONST = Apply("G", ())


def V(t) -> Atom:
    return Atom("V", (t,))


def partial_order(L: Lang, P=P_CONST) -> Formula:
    """P, as a set of pairs ⟨p, q⟩ meaning p ≤ q, is reflexive on its field,
    transitive and antisymmetric."""
    r, a, b, c = L.var(), L.var(), L.var(), L.var()
    le = lambda s, t: L.pair_in(s, t, P)  # noqa: E731
    field = bforall(r, P, L.some_pair(r, lambda s, t: And(le(s, s), le(t, t))))
    trans = Forall(a, Forall(b, Forall(c, Implies(And(le(a, b), le(b, c)), le(a, c)))))
    anti = Forall(a, Forall(b, Implies(And(le(a, b), le(b, a)), Equal(a, b))))
    return conj(field, trans, anti)


def generic_filter(L: Lang, P=P_CONST, G=G_CONST) -> Formula:
    """G is a V-generic filter on P."""
    le = lambda s, t: L.pair_in(s, t, P)  # noqa: E731
    p, q, r, D = L.var(), L.var(), L.var(), L.var()
    conds = bforall(p, G, le(p, p))
    nonempty = Exists(p, member(p, G))
    upward = bforall(p, G, Forall(q, Implies(le(p, q), member(q, G))))
    directed = bforall(p, G, bforall(q, G, bexists(r, G, And(le(r, p), le(r, q)))))
    p2, q2, p3 = L.var(), L.var(), L.var()
    dense = And(
        bforall(p2, D, le(p2, p2)),
        Forall(p2, Implies(le(p2, p2), bexists(q2, D, le(q2, p2)))),
    )
    generic = Forall(D, Implies(And(V(D), dense), bexists(p3, G, member(p3, D))))
    return conj(conds, nonempty, upward, directed, generic)


def valuation_witness(L: Lang, x, y, P=P_CONST, G=G_CONST) -> Formula:
    """x is a P-name and y = x^G, witnessed by a function h on the constituents of x."""
    h, r, r2 = L.var(), L.var(), L.var()
    le = lambda s, t: L.pair_in(s, t, P)  # noqa: E731

    def clause(a, b):
        e, z, e2 = L.var(), L.var(), L.var()
        names = bforall(e, a, L.some_pair(e, lambda c, p: And(le(p, p), Exists(z, L.pair_in(c, z, h)))))
        value = Forall(z, Iff(member(z, b), bexists(e2, a, L.some_pair(e2, lambda c, p: And(member(p, G), L.pair_in(c, z, h))))))
        return And(names, value)

    func = bforall(r, h, bforall(r2, h, L.every_pair(r, lambda a, b: L.every_pair(
        r2, lambda a2, b2: Implies(Equal(a, a2), Equal(b, b2))))))
    return Exists(h, conj(L.pair_in(x, y, h), bforall(r, h, L.every_pair(r, clause)), func))


def _forcing_items(L: Lang):
    a, b, alpha, x, y = Variable("x"), Variable("y"), Variable("alpha"), L.var(), L.var()
    transitive = Forall(a, Forall(b, Implies(And(V(a), member(b, a)), V(b))))
    ordinals = Forall(alpha, Implies(ord_formula(alpha), V(alpha)))
    item4 = And(V(P_CONST), partial_order(L))
    item5 = generic_filter(L)
    item6 = Forall(y, Exists(x, And(V(x), valuation_witness(L, x, y))))
    return transitive, ordinals, item4, item5, item6


def _zf_axioms(infinity=True):
    return [(n, axiom(n)) for n in AXIOMS if n != "Infinity" or infinity]


def theta() -> Theory:
    """Θ: ZF with V, V transitive containing the ordinals, ZF^V, V(P) ∧ P a
    partial order, G a V-generic filter on P, every set x^G for a name x ∈ V."""
    L = Lang()
    zf = _zf_axioms()
    transitive, ordinals, item4, item5, item6 = _forcing_items(L)
    explicit = [f for _, f in zf] + [transitive, ordinals] + [relativize(f, "V") for _, f in zf]
    labels = [f"1 {n}" for n, _ in zf] + ["2 transitive", "2 ordinals"] + [f"3 {n}^V" for n, _ in zf]
    explicit += [item4, item5, item6]
    labels += ["4", "5", "6"]
    gens = [comprehension_schema(), collection_schema(),
            relativized(comprehension_schema()), relativized(collection_schema())]
    return Theory("Theta", explicit, gens, labels=labels, infinity=True)


def formula_code(L: Lang, t) -> Formula:
    """∃ a set of codes containing t, each a well-formed s-formula node over set variables."""
    s, e = L.var(), L.var()
    def in_s(g):
        return member(g, s)

    def wf(e):
        atom = L.node(e, "Atom", 2, lambda name, args: And(
            L.const(name, _enc_str("in")),
            L.tuple_(args, 2, lambda v1, v2: And(L.set_variable(v1), L.set_variable(v2)))), every=False)
        eq = L.node(e, "Equal", 2, lambda v1, v2: And(L.set_variable(v1), L.set_variable(v2)), every=False)
        neg = L.node(e, "Neg", 1, in_s, every=False)
        bins = [L.node(e, k, 2, lambda g, h: And(in_s(g), in_s(h)), every=False)
                for k in ("And", "Or", "Implies", "Iff")]
        qs = [L.node(e, k, 2, lambda v, g: And(L.set_variable(v), in_s(g)), every=False)
              for k in ("Exists", "Forall")]
        return disj(atom, eq, neg, *bins, *qs)

    return Exists(s, And(member(t, s), bforall(e, s, wf(e))))


HOLE = Atom("hole", ())


def zf_code(L: Lang, x, infinity=True) -> Formula:
    """x codes an axiom of ZF: one of the explicit axioms, or a Comprehension
    or Collection instance with a well-formed slot formula."""
    parts = [L.dag_const(x, encode(f)) for _, f in _zf_axioms(infinity)]
    for build in (instantiate_comprehension, instantiate_collection):
        psi = L.var()
        hole = {encode(HOLE): psi}
        parts.append(Exists(psi, And(formula_code(L, psi), L.dag_const(x, encode(build(HOLE)), holes=hole))))
    return disj(*parts)


def v_models_star_zf(L: Lang | None = None) -> Formula:
    """V ⊨* ZF: for every ZF axiom θ and every {θ}-satisfaction relation S for V, ⊨^S θ."""
    L = L or Lang()
    S_ = class_var("S")
    x = L.var()
    with deep_recursion():
        rel = L.sat_relation(S_, lambda psi: L.subformula(psi, x), guard=V)
        return Forall(S_, Forall(x, Implies(And(zf_code(L, x), rel), L.true_in(S_, x))))


def theta_prime_forcing() -> Theory:
    """Θ′: Θ with GB for ZF and the single sentence V ⊨* ZF for ZF^V."""
    L = Lang()
    gb = _class_theory("GB", True)
    transitive, ordinals, item4, item5, item6 = _forcing_items(L)
    explicit = list(gb.explicit) + [transitive, ordinals, v_models_star_zf(L), item4, item5, item6]
    labels = [f"1' {n}" for n in gb.labels] + ["2 transitive", "2 ordinals", "3'", "4", "5", "6"]
    return Theory("Theta'", explicit, list(gb.generators), labels=labels, infinity=True)


@lru_cache(maxsize=None)
def theory_library() -> dict:
    with deep_recursion():
        return {
            "S": _set_theory("S", False),
            "ZF": _set_theory("ZF", True),
            "C": _class_theory("C", False),
            "GB": _class_theory("GB", True),
            "Theta": theta(),
            "Theta'": theta_prime_forcing(),
        }


def item(theory: Theory, label: str) -> Formula:
    for lab, f in theory.items():
        if lab == label:
            return f
    raise KeyError(label)


# ------------------------------------------------------------ theory files


def read_theory(text: str, sig=None, name: str = "theory") -> Theory:
    """Sentences and ``(schema comprehension|collection <formula>)`` entries."""
    header, body, offset = split_header(text)
    if sig is None:
        from ..sequent.io import header_signature

        sig = header_signature(header, default="s")
    explicit, gens = [], []
    for x in read_all(body, offset):
        if isinstance(x, list) and x and x[0] == "schema":
            if len(x) != 3 or x[1] not in ("comprehension", "collection"):
                raise ValueError("schema entries are (schema comprehension|collection <formula>)")
            gens.append(SchemaGenerator(str(x[1]), formula=sexpr_to_formula(x[2], sig)))
        else:
            explicit.append(sexpr_to_formula(x, sig))
    return Theory(name, explicit, gens)


__all__ = [
    "AXIOMS",
    "CLASS_AXIOMS",
    "Schema",
    "axiom",
    "class_comprehension_schema",
    "collection_schema",
    "comprehension_schema",
    "generic_filter",
    "item",
    "partial_order",
    "read_theory",
    "relativized",
    "theory_library",
    "theta",
    "theta_prime_forcing",
    "v_models_star_zf",
    "zf_code",
]
