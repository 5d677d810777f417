"""Free variables, substitution, relativization and schema templates."""

from __future__ import annotations

from functools import lru_cache

from .ast import (
    CLASS,
    SET,
    Apply,
    Atom,
    Binary,
    ClassTerm,
    Equal,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Neg,
    Quantifier,
    Term,
    Variable,
    And,
    member,
)
from .signature import SortError


class ArityError(ValueError):
    pass


def sort_of(t: Term) -> str:
    # every operation symbol in the built-in signatures is set-valued
    if isinstance(t, Variable):
        return t.sort
    if isinstance(t, ClassTerm):
        return CLASS
    return SET


@lru_cache(maxsize=1 << 18)
def free_vars(e) -> frozenset:
    if isinstance(e, Variable):
        return frozenset((e,))
    if isinstance(e, (Apply, Atom)):
        if not e.args:
            return frozenset()
        if len(e.args) == 1:
            return free_vars(e.args[0])
        return frozenset().union(*(free_vars(a) for a in e.args))
    if isinstance(e, (Equal, Binary)):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Neg):
        return free_vars(e.body)
    if isinstance(e, (Quantifier, ClassTerm)):
        return free_vars(e.body) - {e.var}
    raise TypeError(f"not a syntax node: {e!r}")


def free_vars_ordered(e) -> list:
    """Free variables in order of first occurrence (left to right)."""
    out: list = []

    def walk(x, bound):
        if isinstance(x, Variable):
            if x not in bound and x not in out:
                out.append(x)
        elif isinstance(x, (Apply, Atom)):
            for a in x.args:
                walk(a, bound)
        elif isinstance(x, (Equal, Binary)):
            walk(x.left, bound)
            walk(x.right, bound)
        elif isinstance(x, Neg):
            walk(x.body, bound)
        elif isinstance(x, (Quantifier, ClassTerm)):
            walk(x.body, bound | {x.var})

    walk(e, frozenset())
    return out


def is_closed(e) -> bool:
    return not free_vars(e)


def all_var_names(e) -> set:
    """Names of every variable occurring in e, free or bound."""
    names: set = set()

    def walk(x):
        if isinstance(x, Variable):
            names.add(x.name)
        elif isinstance(x, (Apply, Atom)):
            for a in x.args:
                walk(a)
        elif isinstance(x, (Equal, Binary)):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Neg):
            walk(x.body)
        elif isinstance(x, (Quantifier, ClassTerm)):
            names.add(x.var.name)
            walk(x.body)

    walk(e)
    return names


def fresh_var(avoid, sort: str = SET, stem: str = "v") -> Variable:
    """``v#k`` with the least k whose name is not in ``avoid``.

    ``avoid`` may hold names or Variables.
    """
    names = {a.name if isinstance(a, Variable) else a for a in avoid}
    k = 0
    while f"{stem}#{k}" in names:
        k += 1
    return Variable(f"{stem}#{k}", sort)


def substitute(e, bindings: dict):
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    for v, t in bindings.items():
        if sort_of(t) != v.sort:
            raise SortError(f"cannot substitute {t} (sort {sort_of(t)}) for {v.name} (sort {v.sort})")
    fv = free_vars(e)
    b = {v: t for v, t in bindings.items() if v in fv and v != t}
    if not b:
        return e
    return _subst(e, b)


def _subst(e, b: dict):
    if isinstance(e, Variable):
        return b.get(e, e)
    if isinstance(e, Apply):
        return Apply(e.op, [_subst_maybe(a, b) for a in e.args])
    if isinstance(e, Atom):
        return Atom(e.pred, [_subst_maybe(a, b) for a in e.args])
    if isinstance(e, Equal):
        return Equal(_subst_maybe(e.left, b), _subst_maybe(e.right, b))
    if isinstance(e, Neg):
        return Neg(_subst_maybe(e.body, b))
    if isinstance(e, Binary):
        return type(e)(_subst_maybe(e.left, b), _subst_maybe(e.right, b))
    if isinstance(e, (Quantifier, ClassTerm)):
        x = e.var
        inner = {v: t for v, t in b.items() if v != x and v in free_vars(e.body)}
        if not inner:
            return e
        incoming = frozenset().union(*(free_vars(t) for t in inner.values()))
        if x in incoming:
            avoid = incoming | free_vars(e.body) | set(inner) | all_var_names(e.body)
            x2 = fresh_var(avoid, x.sort)
            inner[x] = x2
            x = x2
        return type(e)(x, _subst(e.body, inner))
    raise TypeError(f"not a syntax node: {e!r}")


def _subst_maybe(e, b):
    fv = free_vars(e)
    if not any(v in fv for v in b):
        return e
    return _subst(e, b)


def rename_bound(f, avoid) -> Formula:
    """Alpha-rename every bound variable of f to a fresh ``v#k`` outside ``avoid``."""
    used = {a.name if isinstance(a, Variable) else a for a in avoid}
    used |= {v.name for v in free_vars(f)}

    def walk(x, ren):
        if isinstance(x, Variable):
            return ren.get(x, x)
        if isinstance(x, Apply):
            return Apply(x.op, [walk(a, ren) for a in x.args])
        if isinstance(x, Atom):
            return Atom(x.pred, [walk(a, ren) for a in x.args])
        if isinstance(x, Equal):
            return Equal(walk(x.left, ren), walk(x.right, ren))
        if isinstance(x, Neg):
            return Neg(walk(x.body, ren))
        if isinstance(x, Binary):
            return type(x)(walk(x.left, ren), walk(x.right, ren))
        if isinstance(x, (Quantifier, ClassTerm)):
            nv = fresh_var(used, x.var.sort)
            used.add(nv.name)
            return type(x)(nv, walk(x.body, {**ren, x.var: nv}))
        raise TypeError(x)

    return walk(f, {})


@lru_cache(maxsize=1 << 16)
def alpha_key(e):
    """A representative of e's alpha-equivalence class (bound vars -> %depth)."""

    def walk(x, ren, depth):
        if isinstance(x, Variable):
            return ren.get(x, x)
        if isinstance(x, Apply):
            return Apply(x.op, [walk(a, ren, depth) for a in x.args])
        if isinstance(x, Atom):
            return Atom(x.pred, [walk(a, ren, depth) for a in x.args])
        if isinstance(x, Equal):
            return Equal(walk(x.left, ren, depth), walk(x.right, ren, depth))
        if isinstance(x, Neg):
            return Neg(walk(x.body, ren, depth))
        if isinstance(x, Binary):
            return type(x)(walk(x.left, ren, depth), walk(x.right, ren, depth))
        if isinstance(x, (Quantifier, ClassTerm)):
            nv = Variable(f"%{depth}", x.var.sort)
            return type(x)(nv, walk(x.body, {**ren, x.var: nv}, depth + 1))
        raise TypeError(x)

    return walk(e, {}, 0)


def alpha_equal(a, b) -> bool:
    return alpha_key(a) == alpha_key(b)


# ------------------------------------------------------------ relativization


def _guarded(q: Quantifier, pred: str):
    """Body of q without its relativization guard, or None if unguarded."""
    guard = Atom(pred, (q.var,))
    body = q.body
    if isinstance(q, Forall) and isinstance(body, Implies) and body.left == guard:
        return body.right
    if isinstance(q, Exists) and isinstance(body, And) and body.left == guard:
        return body.right
    return None


def relativize(f: Formula, pred: str = "V") -> Formula:
    """Restrict every set quantifier of f to ``pred``.

    Quantifiers that already carry the guard are left with a single guard,
    which makes the operation idempotent.
    """
    if isinstance(f, (Atom, Equal)):
        return f
    if isinstance(f, Neg):
        return Neg(relativize(f.body, pred))
    if isinstance(f, Binary):
        return type(f)(relativize(f.left, pred), relativize(f.right, pred))
    if isinstance(f, Quantifier):
        if f.var.sort != SET:
            return type(f)(f.var, relativize(f.body, pred))
        inner = _guarded(f, pred)
        body = relativize(f.body if inner is None else inner, pred)
        guard = Atom(pred, (f.var,))
        if isinstance(f, Forall):
            return Forall(f.var, Implies(guard, body))
        return Exists(f.var, And(guard, body))
    raise TypeError(f"not a formula: {f!r}")


# ------------------------------------------------------------ bounded quantifiers


def bforall(x: Variable, t: Term, body: Formula) -> Formula:
    """∀x∈t body."""
    return Forall(x, Implies(member(x, t), body))


def bexists(x: Variable, t: Term, body: Formula) -> Formula:
    """∃x∈t body."""
    return Exists(x, And(member(x, t), body))


def bound_of(q: Quantifier):
    """The bounding term if q has the shape ∀x(x∈t → ..) / ∃x(x∈t ∧ ..), else None."""
    body = q.body
    if isinstance(q, Forall) and isinstance(body, Implies):
        g = body.left
    elif isinstance(q, Exists) and isinstance(body, And):
        g = body.left
    else:
        return None
    if isinstance(g, Atom) and g.pred == "in" and g.args[0] == q.var:
        t = g.args[1]
        if q.var not in free_vars(t):
            return t
    return None


def is_bounded(f: Formula) -> bool:
    """True if every quantifier in f is bounded by a membership guard."""
    if isinstance(f, (Atom, Equal)):
        return True
    if isinstance(f, Neg):
        return is_bounded(f.body)
    if isinstance(f, Binary):
        return is_bounded(f.left) and is_bounded(f.right)
    if isinstance(f, Quantifier):
        if bound_of(f) is None:
            return False
        return is_bounded(f.body.right)
    raise TypeError(f)


# ------------------------------------------------------------ schema templates


def ord_formula(a: Term) -> Formula:
    """Ord(a): a is transitive and every element of a is transitive."""
    avoid = {v.name for v in free_vars(a)}
    b = fresh_var(avoid, stem="b")
    c = fresh_var(avoid | {b.name}, stem="c")
    d = fresh_var(avoid | {b.name, c.name}, stem="d")
    trans = bforall(b, a, bforall(c, b, member(c, a)))
    elems = bforall(b, a, bforall(c, b, bforall(d, c, member(d, b))))
    return And(trans, elems)


def _roles(psi: Formula, wanted: list) -> dict:
    fv = free_vars_ordered(psi)
    if len(fv) > len(wanted):
        raise ArityError(f"expected at most {len(wanted)} free variables, got {len(fv)}")
    if all(v in wanted for v in fv):
        return {}
    # assign by order of first occurrence
    ren = {}
    for v, w in zip(fv, wanted):
        if v != w:
            ren[v] = w
    return ren


def _prepare(psi: Formula, wanted: list, reserved: list) -> Formula:
    ren = _roles(psi, wanted)
    if ren:
        # move bound names out of the way of the role names first
        psi = rename_bound(psi, [*wanted, *reserved, *free_vars(psi)])
        psi = substitute(psi, ren)
    return psi


def instantiate_comprehension(psi: Formula, z=None, y=None) -> Formula:
    """∀y ∀x ∃x′ ∀z (z∈x′ ↔ z∈x ∧ ψ(z,y))."""
    z = z or Variable("z")
    y = y or Variable("y")
    x, x1 = Variable("x"), Variable("x'")
    if z.name in (x.name, x1.name) or y.name in (x.name, x1.name) or z == y:
        raise ArityError("role variables clash with x, x'")
    psi = _prepare(psi, [z, y], [x, x1])
    body = Iff(member(z, x1), And(member(z, x), psi))
    return Forall(y, Forall(x, Exists(x1, Forall(z, body))))


def instantiate_collection(psi: Formula, z=None, beta=None, y=None) -> Formula:
    """∀y ∀x ∃α(Ord α ∧ ∀z∈x (∃β(Ord β ∧ ψ(z,β,y)) → ∃β∈α ψ(z,β,y)))."""
    z = z or Variable("z")
    beta = beta or Variable("beta")
    y = y or Variable("y")
    x, alpha = Variable("x"), Variable("alpha")
    roles = [z, beta, y]
    if len({v.name for v in roles} | {"x", "alpha"}) != 5:
        raise ArityError("role variables clash")
    psi = _prepare(psi, roles, [x, alpha])
    inner = Implies(Exists(beta, And(ord_formula(beta), psi)), bexists(beta, alpha, psi))
    body = And(ord_formula(alpha), bforall(z, x, inner))
    return Forall(y, Forall(x, Exists(alpha, body)))
