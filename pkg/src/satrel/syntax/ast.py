"""Immutable term and formula trees."""

from __future__ import annotations

SET = "set"
CLASS = "class"


class Node:
    """Base for terms and formulas: structural equality, cached hash."""

    __slots__ = ("_h",)
    _fields: tuple = ()

    def _values(self):
        return tuple(getattr(self, f) for f in self._fields)

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return hash(self) == hash(other) and self._values() == other._values()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            h = hash((type(self).__name__,) + self._values())
            object.__setattr__(self, "_h", h)
            return h

    def __setattr__(self, name, value):
        raise AttributeError("syntax nodes are immutable")

    def __reduce__(self):
        return (type(self), self._values())

    def __repr__(self):
        from .printer import to_sexpr

        return f"{type(self).__name__}<{to_sexpr(self)}>"

    def __str__(self):
        from .printer import to_sexpr

        return to_sexpr(self)


def _init(self, **kw):
    for k, v in kw.items():
        object.__setattr__(self, k, v)


# ---------------------------------------------------------------- terms


class Term(Node):
    __slots__ = ()


class Variable(Term):
    __slots__ = ("name", "sort")
    _fields = ("name", "sort")

    def __init__(self, name: str, sort: str = SET):
        _init(self, name=name, sort=sort)


class Apply(Term):
    __slots__ = ("op", "args")
    _fields = ("op", "args")

    def __init__(self, op: str, args=()):
        _init(self, op=op, args=tuple(args))


class ClassTerm(Term):
    """{var | body}; a term of the class sort."""

    __slots__ = ("var", "body")
    _fields = ("var", "body")
    sort = CLASS

    def __init__(self, var: Variable, body: "Formula"):
        _init(self, var=var, body=body)


# ---------------------------------------------------------------- formulas


class Formula(Node):
    __slots__ = ()


class Atom(Formula):
    __slots__ = ("pred", "args")
    _fields = ("pred", "args")

    def __init__(self, pred: str, args=()):
        _init(self, pred=pred, args=tuple(args))


class Equal(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")

    def __init__(self, left: Term, right: Term):
        _init(self, left=left, right=right)


class Neg(Formula):
    __slots__ = ("body",)
    _fields = ("body",)

    def __init__(self, body: Formula):
        _init(self, body=body)


class Binary(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    keyword = ""

    def __init__(self, left: Formula, right: Formula):
        _init(self, left=left, right=right)


class And(Binary):
    __slots__ = ()
    keyword = "and"


class Or(Binary):
    __slots__ = ()
    keyword = "or"


class Implies(Binary):
    __slots__ = ()
    keyword = "implies"


class Iff(Binary):
    __slots__ = ()
    keyword = "iff"


class Quantifier(Formula):
    __slots__ = ("var", "body")
    _fields = ("var", "body")
    keyword = ""

    def __init__(self, var: Variable, body: Formula):
        _init(self, var=var, body=body)


class Exists(Quantifier):
    __slots__ = ()
    keyword = "exists"


class Forall(Quantifier):
    __slots__ = ()
    keyword = "forall"


BINARY = {c.keyword: c for c in (And, Or, Implies, Iff)}
QUANTIFIERS = {c.keyword: c for c in (Exists, Forall)}


# ---------------------------------------------------------------- helpers


def var(name: str, sort: str = SET) -> Variable:
    return Variable(name, sort)


def member(a: Term, b: Term) -> Atom:
    return Atom("in", (a, b))


def class_member(a: Term, b: Term) -> Atom:
    return Atom("class-in", (a, b))


def conj(*fs: Formula) -> Formula:
    """Right-nested conjunction; a single formula is returned as is."""
    if not fs:
        raise ValueError("empty conjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        raise ValueError("empty disjunction")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


def forall(vs, body: Formula) -> Formula:
    if isinstance(vs, Variable):
        vs = [vs]
    for v in reversed(list(vs)):
        body = Forall(v, body)
    return body


def exists(vs, body: Formula) -> Formula:
    if isinstance(vs, Variable):
        vs = [vs]
    for v in reversed(list(vs)):
        body = Exists(v, body)
    return body


def children(e: Node) -> tuple:
    """Immediate subexpressions (terms and formulas), excluding bound variables."""
    if isinstance(e, Variable):
        return ()
    if isinstance(e, (Apply, Atom)):
        return e.args
    if isinstance(e, Equal):
        return (e.left, e.right)
    if isinstance(e, Neg):
        return (e.body,)
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, (Quantifier, ClassTerm)):
        return (e.body,)
    raise TypeError(f"not a syntax node: {e!r}")


def is_atomic(f: Formula) -> bool:
    return isinstance(f, (Atom, Equal))


def subformulas(f: Formula) -> list:
    """All subformulas of f (f included), children before parents, no repeats."""
    out: list = []
    seen: set = set()

    def walk(g):
        if g in seen:
            return
        if isinstance(g, Neg):
            walk(g.body)
        elif isinstance(g, Binary):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Quantifier):
            walk(g.body)
        seen.add(g)
        out.append(g)

    walk(f)
    return out


def connective_count(f: Formula) -> int:
    if isinstance(f, Neg):
        return 1 + connective_count(f.body)
    if isinstance(f, Binary):
        return 1 + connective_count(f.left) + connective_count(f.right)
    if isinstance(f, Quantifier):
        return 1 + connective_count(f.body)
    return 0
