"""Forcing relations over a finite poset.

The ground model is implicit: a finite pool of names.  Quantifiers range
over the pool in the recursive relation and over the values of the pool in
the semantic one.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import count

from ..semantics import membership_structure
from ..semantics.evaluate import Evaluator
from ..syntax.ast import And, Atom, Equal, Exists, Forall, Iff, Implies, Neg, Or, Variable
from ..syntax.ops import free_vars
from .names import check_rank, name_pool, value_of
from .poset import Poset, generic_filters


class Forcing:
    """Forcing over P with quantifiers ranging over ``pool``."""

    def __init__(self, P: Poset, pool=None, rank_bound: int = 2):
        self.P = P
        self.rank_bound = rank_bound
        self.pool = tuple(pool) if pool is not None else tuple(name_pool(P, rank_bound))
        check_rank(self.pool, rank_bound)
        self.filters = generic_filters(P)
        self._atom: dict = {}
        self._memo: dict = {}
        self._evaluators: dict = {}
        self._relations: dict = {}
        self._compiled: dict = {}

    # ------------------------------------------------------------ helpers

    def _names(self, f, names) -> dict:
        missing = free_vars(f) - set(names)
        if missing:
            raise ValueError(f"no names for {sorted(v.name for v in missing)}")
        check_rank(names.values(), self.rank_bound)
        return dict(names)

    # ------------------------------------------------------------ semantic

    def model(self, G):
        ev = self._evaluators.get(G)
        if ev is None:
            carrier = {value_of(x, G) for x in self.pool}
            ev = self._evaluators[G] = Evaluator(membership_structure(carrier))
        return ev

    def truth(self, G, f, names) -> bool:
        """M[G] ⊨ f at the values of the names."""
        return self.model(G).truth(f, {v: value_of(x, G) for v, x in names.items()})

    def forces_semantic(self, p, f, names) -> bool:
        names = self._names(f, names)
        return all(self.truth(G, f, names) for G in self.filters if p in G)

    # ------------------------------------------------------------ recursive

    def forces_in(self, p, x, y) -> bool:
        """Densely below p some (w, t) ∈ y has q ≤ t and q ⊩ x = w."""
        key = ("in", p, x, y)
        r = self._atom.get(key)
        if r is None:
            P = self.P
            good = {q for q in P.elements if any(P.le(q, t) and self.forces_eq(q, x, w) for w, t in y.pairs)}
            r = self._atom[key] = P.dense_below(p, good)
        return r

    def forces_sub(self, p, x, y) -> bool:
        """For every (z, s) ∈ x and q ≤ p, s: q ⊩ z ∈ y."""
        P = self.P
        return all(self.forces_in(q, z, y) for z, s in x.pairs for q in P.below(p) if P.le(q, s))

    def forces_eq(self, p, x, y) -> bool:
        key = ("eq", p, x, y)
        r = self._atom.get(key)
        if r is None:
            r = self._atom[key] = self.forces_sub(p, x, y) and self.forces_sub(p, y, x)
        return r

    def forces_recursive(self, p, f, names) -> bool:
        names = self._names(f, names)
        return self._rec(p, self.compile(f), names)

    def compile(self, f) -> "_Node":
        node = self._compiled.get(f)
        if node is None:
            node = self._compiled[f] = _compile(f)
        return node

    def _rec(self, p, node, env) -> bool:
        key = (p, node.id, tuple(env[v] for v in node.fv))
        r = self._memo.get(key)
        if r is None:
            r = self._memo[key] = self._clause(p, node, env, self._rec)
        return r

    def _clause(self, p, node, env, sub) -> bool:
        """The forcing clause for node at p, with sub deciding immediate subformulas."""
        P = self.P
        k = node.kind
        if k == "in":
            return self.forces_in(p, env[node.a], env[node.b])
        if k == "eq":
            return self.forces_eq(p, env[node.a], env[node.b])
        if k == "not":
            return not any(sub(q, node.body, env) for q in P.below(p))
        if k == "and":
            return sub(p, node.left, env) and sub(p, node.right, env)
        if k == "or":
            good = {q for q in P.below(p) if sub(q, node.left, env) or sub(q, node.right, env)}
            return P.dense_below(p, good)
        if k == "implies":
            right = {q for q in P.below(p) if sub(q, node.right, env)}
            return all(P.dense_below(q, right) for q in P.below(p) if sub(q, node.left, env))
        if k == "iff":
            return sub(p, node.left, env) and sub(p, node.right, env)
        if k == "exists":
            v = node.var
            good = {q for q in P.below(p) if any(sub(q, node.body, {**env, v: x}) for x in self.pool)}
            return P.dense_below(p, good)
        if k == "forall":
            v = node.var
            return all(sub(p, node.body, {**env, v: x}) for x in self.pool)
        raise TypeError(k)

    # ------------------------------------------------------------ ⊩*

    def relation(self, f):
        """The {f}-forcing relation, or None if the tabulated relation breaks a clause."""
        return _relation(self, f)

    def forces_star(self, p, f, names) -> bool:
        names = self._names(f, names)
        rel = self.relation(f)
        if rel is None:
            raise AssertionError("no forcing relation")  # unreachable within bounds
        return rel.forces(p, f, names)

    def boolean_value(self, f, names) -> frozenset:
        """{m minimal : m ⊩* f}; the set of all minimal elements is 1."""
        names = self._names(f, names)
        rel = self.relation(f)
        if rel is None:
            return frozenset(self.P.minimal)
        return frozenset(m for m in self.P.minimal if rel.forces(m, f, names))


class ForcingRelation:
    """A table of (condition, subformula, names) verdicts closed under the clauses."""

    def __init__(self, ctx: Forcing, f):
        self.ctx = ctx
        self.formula = f
        self.root = ctx.compile(f)
        self.table: dict = {}

    def forces(self, p, f, names) -> bool:
        node = self.ctx.compile(f)
        return self.table[(p, node.id, tuple(names[v] for v in node.fv))]

    def fill(self):
        ctx = self.ctx
        for node in _nodes(self.root):
            envs = [dict()]
            for v in node.fv:
                envs = [{**e, v: x} for e in envs for x in ctx.pool]
            for env in envs:
                for p in ctx.P.elements:
                    self.table[(p, node.id, tuple(env[v] for v in node.fv))] = ctx._rec(p, node, env)

    def closed(self) -> bool:
        """Every entry agrees with its clause evaluated on the table."""
        ctx = self.ctx
        table = self.table
        look = lambda q, n, env: table[(q, n.id, tuple(env[v] for v in n.fv))]  # noqa: E731
        by_id = {n.id: n for n in _nodes(self.root)}
        for (p, i, vals), verdict in table.items():
            node = by_id[i]
            if ctx._clause(p, node, dict(zip(node.fv, vals)), look) != verdict:
                return False
        return True


_ids = count()


class _Node:
    """A formula compiled for the forcing clauses; iff is split into two implications."""

    __slots__ = ("kind", "left", "right", "body", "var", "a", "b", "fv", "id")

    def __init__(self, kind, fv, left=None, right=None, body=None, var=None, a=None, b=None):
        self.kind, self.fv = kind, fv
        self.left, self.right, self.body, self.var, self.a, self.b = left, right, body, var, a, b
        self.id = next(_ids)


def _compile(f) -> _Node:
    fv = tuple(sorted(free_vars(f), key=lambda v: v.name))
    if isinstance(f, (Atom, Equal)):
        if isinstance(f, Atom):
            if f.pred != "in" or len(f.args) != 2:
                raise ValueError(f"unsupported atom {f}")
            a, b, kind = f.args[0], f.args[1], "in"
        else:
            a, b, kind = f.left, f.right, "eq"
        for t in (a, b):
            if not isinstance(t, Variable):
                raise ValueError(f"only variables may occur as terms, got {t}")
        return _Node(kind, fv, a=a, b=b)
    if isinstance(f, Neg):
        return _Node("not", fv, body=_compile(f.body))
    if isinstance(f, Iff):
        left, right = _compile(f.left), _compile(f.right)
        return _Node("iff", fv, left=_Node("implies", fv, left=left, right=right),
                     right=_Node("implies", fv, left=right, right=left))
    for cls, kind in ((And, "and"), (Or, "or"), (Implies, "implies")):
        if isinstance(f, cls):
            return _Node(kind, fv, left=_compile(f.left), right=_compile(f.right))
    if isinstance(f, (Exists, Forall)):
        return _Node("exists" if isinstance(f, Exists) else "forall", fv, body=_compile(f.body), var=f.var)
    raise TypeError(f"not a formula: {f!r}")


def _nodes(root) -> list:
    out, seen, todo = [], set(), [root]
    while todo:
        n = todo.pop()
        if n is None or n.id in seen:
            continue
        seen.add(n.id)
        out.append(n)
        todo.extend((n.left, n.right, n.body))
    return out


def _relation(ctx: Forcing, f):
    cache = ctx._relations
    if f in cache:
        return cache[f]
    rel = ForcingRelation(ctx, f)
    rel.fill()
    out = rel if rel.closed() else None
    cache[f] = out
    return out


@lru_cache(maxsize=64)
def _context(P: Poset, pool: tuple | None, rank_bound: int) -> Forcing:
    return Forcing(P, pool, rank_bound)


def _ctx(P, names, pool, rank_bound):
    base = tuple(pool) if pool is not None else tuple(name_pool(P, rank_bound))
    extra = tuple(x for x in names.values() if x not in base)
    full = tuple(dict.fromkeys(base + extra + tuple(y for x in extra for y in x.constituents())))
    return _context(P, full, rank_bound)


def forces_semantic(P, p, f, names=None, pool=None, rank_bound: int = 2) -> bool:
    names = names or {}
    return _ctx(P, names, pool, rank_bound).forces_semantic(p, f, names)


def forces_recursive(P, p, f, names=None, pool=None, rank_bound: int = 2) -> bool:
    names = names or {}
    return _ctx(P, names, pool, rank_bound).forces_recursive(p, f, names)


def forces_star(P, p, f, names=None, pool=None, rank_bound: int = 2) -> bool:
    names = names or {}
    return _ctx(P, names, pool, rank_bound).forces_star(p, f, names)


def boolean_value(P, f, names=None, pool=None, rank_bound: int = 2) -> frozenset:
    names = names or {}
    return _ctx(P, names, pool, rank_bound).boolean_value(f, names)


__all__ = [
    "Forcing",
    "ForcingRelation",
    "boolean_value",
    "forces_recursive",
    "forces_semantic",
    "forces_star",
]
