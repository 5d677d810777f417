"""Partial valuations, satisfaction relations and the ⊨* predicate."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ..syntax.ast import (
    And,
    Apply,
    Atom,
    ClassTerm,
    Equal,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Neg,
    Or,
    Term,
    Variable,
    children,
)
from ..syntax.ops import free_vars
from .structure import (
    Assignment,
    Structure,
    ResourceLimit,
    UnassignedVariable,
    assignment_count,
    check_substructure,
)

DEFAULT_LIMIT = 10**7


@lru_cache(maxsize=1 << 16)
def _fv(e) -> tuple:
    return tuple(sorted(free_vars(e), key=lambda v: (v.name, v.sort)))


def subclose(phis) -> list:
    """Every subexpression (terms included) of the given formulas, children first."""
    out: list = []
    seen: set = set()

    def walk(e):
        if e in seen:
            return
        for c in children(e):
            walk(c)
        seen.add(e)
        out.append(e)

    for f in phis:
        walk(f)
    return out


@dataclass
class Verdict:
    ok: bool
    certificate: str | None = None

    def __bool__(self):
        return self.ok


def _key(e, a) -> tuple:
    try:
        return tuple(a[v] for v in _fv(e))
    except KeyError as exc:
        raise UnassignedVariable(getattr(exc.args[0], "name", str(exc.args[0]))) from None


def _is_finite(st: Structure) -> bool:
    return not getattr(st, "infinite", False)


@dataclass
class ValuationFunction:
    """Table (expression, assignment restricted to its free variables) → value.

    Internally the assignment part of a key is the tuple of values of the
    expression's free variables, sorted by name.
    """

    structure: Structure
    domain: list
    table: dict = field(default_factory=dict)

    def lookup(self, e, assignment):
        return self.table[(e, _key(e, assignment))]

    def __contains__(self, item):
        e, a = item
        try:
            return (e, _key(e, a)) in self.table
        except UnassignedVariable:
            return False

    def entries(self):
        """Yield (expression, Assignment, value)."""
        for (e, vals), value in self.table.items():
            yield e, Assignment(zip(_fv(e), vals)), value

    def __len__(self):
        return len(self.table)

    def restrict(self, phis) -> "ValuationFunction":
        dom = subclose(phis)
        ds = set(dom)
        missing = [e for e in dom if e not in set(self.domain)]
        if missing:
            raise KeyError(f"{missing[0]} is outside the valuation's domain")
        return ValuationFunction(
            self.structure, dom, {k: v for k, v in self.table.items() if k[0] in ds}
        )

    def satisfaction_relation(self) -> "SatRelation":
        rel = frozenset(
            (e, vals) for (e, vals), v in self.table.items() if isinstance(e, Formula) and v is True
        )
        return SatRelation(self.structure, [e for e in self.domain if isinstance(e, Formula)], rel)


@dataclass
class SatRelation:
    structure: Structure
    domain: list
    relation: frozenset

    def holds(self, f, assignment) -> bool:
        if f not in set(self.domain):
            raise KeyError(f"{f} is outside the relation's domain")
        return (f, _key(f, assignment)) in self.relation

    def pairs(self):
        for f, vals in sorted(self.relation, key=lambda p: str(p)):
            yield f, Assignment(zip(_fv(f), vals))

    def __len__(self):
        return len(self.relation)


# ------------------------------------------------------------ clauses


def clause_value(st: Structure, e, a: dict, get):
    """Value of e at assignment a computed from children via ``get(child, a)``."""
    if isinstance(e, Variable):
        return a[e]
    if isinstance(e, Apply):
        return st.apply(e.op, [get(c, a) for c in e.args])
    if isinstance(e, Atom):
        return st.holds(e.pred, [get(c, a) for c in e.args])
    if isinstance(e, Equal):
        return get(e.left, a) == get(e.right, a)
    if isinstance(e, Neg):
        return not get(e.body, a)
    if isinstance(e, And):
        return get(e.left, a) and get(e.right, a)
    if isinstance(e, Or):
        return get(e.left, a) or get(e.right, a)
    if isinstance(e, Implies):
        return (not get(e.left, a)) or get(e.right, a)
    if isinstance(e, Iff):
        return get(e.left, a) == get(e.right, a)
    if isinstance(e, (Exists, Forall, ClassTerm)):
        x = e.var
        vals = []
        for d in st.carrier(x.sort):
            b = dict(a)
            b[x] = d
            vals.append((d, get(e.body, b)))
        if isinstance(e, Exists):
            return any(v for _, v in vals)
        if isinstance(e, Forall):
            return all(v for _, v in vals)
        return frozenset(d for d, v in vals if v)
    raise TypeError(f"not a syntax node: {e!r}")


def _assignments(st, fv):
    for vals in product(*(st.carrier(v.sort) for v in fv)):
        yield vals


def table_size(st: Structure, phis) -> int:
    return sum(assignment_count(st, free_vars(e)) for e in subclose(phis))


def build_valuation(st: Structure, phis, limit: int = DEFAULT_LIMIT) -> ValuationFunction:
    """The (unique) valuation function for st on subclose(phis)."""
    if not _is_finite(st):
        raise ValueError("build_valuation needs a finite structure")
    phis = list(phis)
    dom = subclose(phis)
    size = sum(assignment_count(st, free_vars(e)) for e in dom)
    if size > limit:
        raise ResourceLimit(f"valuation table would have {size} entries (limit {limit})")
    table: dict = {}

    def get(c, a):
        return table[(c, _key(c, a))]

    for e in dom:
        fv = _fv(e)
        for vals in _assignments(st, fv):
            a = dict(zip(fv, vals))
            table[(e, vals)] = clause_value(st, e, a, get)
    return ValuationFunction(st, dom, table)


def is_partial_valuation(st: Structure, F: ValuationFunction) -> Verdict:
    """Check domain, value ranges and every recursive clause of F."""
    dom = list(F.domain)
    dom_set = set(dom)
    closed = set(subclose(dom))
    if closed != dom_set:
        extra = next(iter(closed - dom_set))
        return Verdict(False, f"domain not closed under subexpressions: missing {extra}")
    for (e, vals) in F.table:
        if e not in dom_set:
            return Verdict(False, f"entry for {e} outside the domain")
        if len(vals) != len(_fv(e)):
            return Verdict(False, f"entry for {e} has a malformed assignment {vals}")

    def get(c, a):
        try:
            return F.table[(c, _key(c, a))]
        except KeyError:
            raise _Missing(c, a) from None

    for e in dom:
        fv = _fv(e)
        for vals in _assignments(st, fv):
            a = dict(zip(fv, vals))
            shown = _show(e, fv, vals)
            if (e, vals) not in F.table:
                return Verdict(False, f"missing entry {shown}")
            v = F.table[(e, vals)]
            if isinstance(e, Formula):
                if not isinstance(v, bool):
                    return Verdict(False, f"non-boolean value at {shown}")
            elif isinstance(e, Term) and not isinstance(e, ClassTerm):
                if not st.in_carrier(v, e.sort if isinstance(e, Variable) else "set"):
                    return Verdict(False, f"value outside the carrier at {shown}")
            try:
                want = clause_value(st, e, a, get)
            except _Missing as m:
                return Verdict(False, f"entry {shown} depends on missing {m}")
            if want != v:
                return Verdict(False, f"clause violated at {shown}: table has {v}, clause gives {want}")
    return Verdict(True, None)


class _Missing(Exception):
    def __init__(self, e, a):
        self.e, self.a = e, a

    def __str__(self):
        return f"{self.e} at {dict((v.name, str(x)) for v, x in self.a.items())}"


def _show(e, fv, vals) -> str:
    asg = ", ".join(f"{v.name}↦{x}" for v, x in zip(fv, vals))
    return f"⟨{e}, {{{asg}}}⟩"


def merge_valuations(F: ValuationFunction, G: ValuationFunction) -> ValuationFunction:
    if F.structure is not G.structure:
        raise ValueError("valuations for different structures")
    table = dict(F.table)
    for k, v in G.table.items():
        if k in table and table[k] != v:
            raise ValueError(f"valuations disagree at {k[0]}")
        table[k] = v
    dom = list(dict.fromkeys(list(F.domain) + list(G.domain)))
    return ValuationFunction(F.structure, subclose(dom), table)


def agree_on_common_domain(F: ValuationFunction, G: ValuationFunction) -> bool:
    common = F.table.keys() & G.table.keys()
    return all(F.table[k] == G.table[k] for k in common)


# ------------------------------------------------------------ ⊨*


class LazyValuation:
    """Entries of the unique valuation function, computed on demand."""

    def __init__(self, st: Structure):
        if not _is_finite(st):
            raise ValueError("⊨* is only decided on finite structures")
        self.st = st
        self.table: dict = {}

    def get(self, e, a):
        k = (e, _key(e, a))
        v = self.table.get(k)
        if v is None:
            v = clause_value(self.st, e, a, self.get)
            self.table[k] = v
        return v


def models_star(st: Structure, phi: Formula, assignment=None, method: str = "lazy") -> bool:
    """𝔖 ⊨* φ[A]: the unique {φ}-satisfaction relation contains ⟨φ, A⟩.

    On a finite structure a {φ}-satisfaction relation exists (built clause by
    clause) and any two agree, so quantifying over all of them reduces to
    reading off the one we build.  ``method="table"`` builds the whole table;
    ``"lazy"`` builds only the entries that the answer depends on; ``"fast"``
    uses the compiled evaluator (same clauses, guard-directed enumeration).
    """
    a = dict(assignment or {})
    missing = free_vars(phi) - set(a)
    if missing:
        raise UnassignedVariable(", ".join(sorted(v.name for v in missing)))
    if method == "table":
        return build_valuation(st, [phi]).lookup(phi, a)
    if method == "lazy":
        return bool(LazyValuation(st).get(phi, {v: a[v] for v in free_vars(phi)}))
    if method == "fast":
        from .evaluate import Evaluator

        if not _is_finite(st):
            raise ValueError("⊨* is only decided on finite structures")
        return Evaluator(st).truth(phi, a)
    raise ValueError(method)


def models_star_theory(st: Structure, theory, max_connectives: int = 1, method: str = "fast") -> bool:
    return all(models_star(st, s, {}, method) for s in theory.sentences(max_connectives))


def failing_sentences(st: Structure, theory, max_connectives: int = 1) -> list:
    """Labels of the failing sentences; schema instances are labelled ``<schema>#k``."""
    out = [lab for lab, s in theory.items() if not models_star(st, s, {}, "fast")]
    for g in theory.generators:
        name = getattr(g, "label", None) or getattr(g, "kind", "schema")
        out += [f"{name}#{k}" for k, s in enumerate(g.instances(max_connectives)) if not models_star(st, s, {}, "fast")]
    return out


def is_phi_elementary(sub: Structure, sup: Structure, phi: Formula) -> Verdict:
    """Does sup's {φ}-satisfaction relation restrict to one for sub?"""
    check_substructure(sub, sup)
    big = build_valuation(sup, [phi])
    small: dict = {}
    for (e, vals), v in big.table.items():
        fv = _fv(e)
        if all(sub.in_carrier(x, var.sort) for x, var in zip(vals, fv)):
            small[(e, vals)] = v
    return is_partial_valuation(sub, ValuationFunction(sub, big.domain, small))
