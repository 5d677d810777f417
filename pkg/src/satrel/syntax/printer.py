from __future__ import annotations

from .ast import (
    SET,
    Apply,
    Atom,
    Binary,
    ClassTerm,
    Equal,
    Neg,
    Quantifier,
    Variable,
)


def var_text(v: Variable) -> str:
    return v.name if v.sort == SET else f"{v.name}:{v.sort}"


def to_sexpr(e) -> str:
    parts: list = []
    _emit(e, parts)
    return "".join(parts)


def _emit(e, out: list):
    # explicit stack would be faster, but formulas stay shallow enough
    if isinstance(e, Variable):
        out.append(var_text(e))
    elif isinstance(e, (Apply, Atom)):
        head = e.op if isinstance(e, Apply) else e.pred
        if not e.args:
            out.append(head)
            return
        out.append("(" + head)
        for a in e.args:
            out.append(" ")
            _emit(a, out)
        out.append(")")
    elif isinstance(e, Equal):
        out.append("(= ")
        _emit(e.left, out)
        out.append(" ")
        _emit(e.right, out)
        out.append(")")
    elif isinstance(e, Neg):
        out.append("(not ")
        _emit(e.body, out)
        out.append(")")
    elif isinstance(e, Binary):
        out.append(f"({e.keyword} ")
        _emit(e.left, out)
        out.append(" ")
        _emit(e.right, out)
        out.append(")")
    elif isinstance(e, Quantifier):
        out.append(f"({e.keyword} {var_text(e.var)} ")
        _emit(e.body, out)
        out.append(")")
    elif isinstance(e, ClassTerm):
        out.append(f"(classterm {var_text(e.var)} ")
        _emit(e.body, out)
        out.append(")")
    else:
        raise TypeError(f"cannot print {e!r}")


_SYMBOLS = {"and": "∧", "or": "∨", "implies": "→", "iff": "↔", "exists": "∃", "forall": "∀"}


def to_human(e) -> str:
    """Infix rendering for terminal output."""
    if isinstance(e, Variable):
        return var_text(e)
    if isinstance(e, Apply):
        if not e.args:
            return "0" if e.op == "empty" else e.op
        if e.op == "adjoin":
            return f"({to_human(e.args[0])} ↶ {to_human(e.args[1])})"
        return f"{e.op}({', '.join(to_human(a) for a in e.args)})"
    if isinstance(e, Atom):
        if e.pred == "in" or e.pred == "class-in":
            return f"{to_human(e.args[0])} ∈ {to_human(e.args[1])}"
        if not e.args:
            return e.pred
        return f"{e.pred}({', '.join(to_human(a) for a in e.args)})"
    if isinstance(e, Equal):
        return f"{to_human(e.left)} = {to_human(e.right)}"
    if isinstance(e, Neg):
        return "¬" + to_human(e.body)
    if isinstance(e, Binary):
        return f"({to_human(e.left)} {_SYMBOLS[e.keyword]} {to_human(e.right)})"
    if isinstance(e, Quantifier):
        return f"{_SYMBOLS[e.keyword]}{var_text(e.var)} {to_human(e.body)}"
    if isinstance(e, ClassTerm):
        return f"{{{var_text(e.var)} | {to_human(e.body)}}}"
    raise TypeError(f"cannot print {e!r}")
