from __future__ import annotations

from ..sexpr import ParseError, SList, Sym, read_one
from .ast import (
    BINARY,
    CLASS,
    QUANTIFIERS,
    SET,
    Apply,
    Atom,
    ClassTerm,
    Equal,
    Neg,
    Variable,
)
from .signature import SortError

_RESERVED = {"not", "=", "classterm", *BINARY, *QUANTIFIERS}


def _pos(x):
    return getattr(x, "pos", None)


def parse_variable(tok, sig) -> Variable:
    if not isinstance(tok, str):
        raise ParseError("expected a variable", _pos(tok))
    name, _, sort = str(tok).partition(":")
    sort = sort or SET
    if not name or name in _RESERVED:
        raise ParseError(f"bad variable name {tok!r}", _pos(tok))
    if sort not in sig.sorts:
        raise SortError(f"variable {tok}: sort {sort!r} not in signature {sig.name}")
    return Variable(name, sort)


def sort_of(t) -> str:
    if isinstance(t, Variable):
        return t.sort
    if isinstance(t, ClassTerm):
        return CLASS
    raise TypeError("sort_of on Apply needs a signature; use term_sort")


def term_sort(t, sig) -> str:
    if isinstance(t, Apply):
        return sig.operation(t.op)[1]
    return sort_of(t)


def sexpr_to_term(x, sig):
    if isinstance(x, str):
        if sig.has_operation(x):
            args, _ = sig.operation(x)
            if args:
                raise SortError(f"operation {x} expects {len(args)} arguments")
            return Apply(str(x), ())
        return parse_variable(x, sig)
    if not x:
        raise ParseError("empty term", _pos(x))
    head = x[0]
    if head == "classterm":
        if len(x) != 3:
            raise ParseError("classterm takes a variable and a formula", _pos(x))
        v = parse_variable(x[1], sig)
        if v.sort != SET:
            raise SortError(f"classterm variable {v.name} must be a set variable")
        return ClassTerm(v, sexpr_to_formula(x[2], sig))
    if not isinstance(head, str) or not sig.has_operation(head):
        raise SortError(f"unknown operation symbol {head!r} in signature {sig.name}")
    arg_sorts, _ = sig.operation(head)
    args = [sexpr_to_term(a, sig) for a in x[1:]]
    _check_args(str(head), arg_sorts, args, sig)
    return Apply(str(head), args)


def _check_args(name, sorts, args, sig):
    if len(sorts) != len(args):
        raise SortError(f"{name} expects {len(sorts)} arguments, got {len(args)}")
    for want, a in zip(sorts, args):
        got = term_sort(a, sig)
        if got != want:
            raise SortError(f"{name}: argument {a} has sort {got}, expected {want}")


def sexpr_to_formula(x, sig):
    if isinstance(x, str):
        if sig.has_predicate(x) and not sig.predicate(x):
            return Atom(str(x), ())
        raise SortError(f"{x!r} is not a nullary predicate of signature {sig.name}")
    if not x:
        raise ParseError("empty formula", _pos(x))
    head = x[0]
    if not isinstance(head, str):
        raise ParseError("formula head must be a symbol", _pos(x))
    if head == "not":
        _arity(x, 1)
        return Neg(sexpr_to_formula(x[1], sig))
    if head in BINARY:
        _arity(x, 2)
        return BINARY[head](sexpr_to_formula(x[1], sig), sexpr_to_formula(x[2], sig))
    if head in QUANTIFIERS:
        _arity(x, 2)
        return QUANTIFIERS[head](parse_variable(x[1], sig), sexpr_to_formula(x[2], sig))
    if head == "=":
        _arity(x, 2)
        a, b = sexpr_to_term(x[1], sig), sexpr_to_term(x[2], sig)
        if term_sort(a, sig) != term_sort(b, sig):
            raise SortError(f"=: sorts of {a} and {b} differ")
        return Equal(a, b)
    if sig.has_predicate(head):
        args = [sexpr_to_term(a, sig) for a in x[1:]]
        _check_args(str(head), sig.predicate(head), args, sig)
        return Atom(str(head), args)
    raise SortError(f"unknown predicate symbol {head!r} in signature {sig.name}")


def _arity(x, k):
    if len(x) != k + 1:
        raise ParseError(f"{x[0]} takes {k} argument(s), got {len(x) - 1}", _pos(x))


def parse(text: str, sig, kind: str = "formula"):
    """Parse one formula (or term, with kind="term") from s-expression text."""
    x = read_one(text)
    if kind == "term":
        return sexpr_to_term(x, sig)
    if kind != "formula":
        raise ValueError(kind)
    return sexpr_to_formula(x, sig)


def parse_formula(text: str, sig):
    return parse(text, sig, "formula")


def parse_term(text: str, sig):
    return parse(text, sig, "term")


__all__ = [
    "parse",
    "parse_formula",
    "parse_term",
    "sexpr_to_formula",
    "sexpr_to_term",
    "term_sort",
    "ParseError",
    "SortError",
    "Sym",
    "SList",
]
