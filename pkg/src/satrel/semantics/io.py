"""Structure files.

::

    +++
    signature = "s"
    +++
    (structure
      (carrier {} {{}} a)       ; HF literals (no inner spaces) or atom names
      (pred in ({} {{}}))       ; tuples; "in" on HF literals defaults to ∈
      (op f ((a) {}) ((b) a))   ; (args value) rows; constants use ()
      (classes (X {} a) (Y)))   ; class carrier for c-signatures

``(structure (stage 3))`` is (stage(3); ∈).
"""

from __future__ import annotations

from ..hf import HfSet, parse_literal
from ..sexpr import ParseError, read_all, split_header
from ..syntax.signature import CLASS, SET
from .structure import Structure, _member_solver, hf_membership_structure


def _element(tok):
    if isinstance(tok, list):
        raise ParseError("expected an element", getattr(tok, "pos", None))
    s = str(tok)
    return parse_literal(s) if s.startswith("{") else s


def sexpr_to_structure(x, sig=None, name: str = "") -> Structure:
    if not (isinstance(x, list) and x and x[0] == "structure"):
        raise ParseError("expected (structure ...)", getattr(x, "pos", None))
    carrier, preds, ops, classes = None, {}, {}, None
    for part in x[1:]:
        if not (isinstance(part, list) and part):
            raise ParseError("structure entries are lists", getattr(part, "pos", None))
        head = part[0]
        if head == "stage":
            if len(part) != 2:
                raise ParseError("(stage n)", part.pos)
            st = hf_membership_structure(int(part[1]))
            if len(x) == 2:
                return st
            carrier = list(st.carrier())
        elif head == "carrier":
            carrier = [_element(t) for t in part[1:]]
        elif head == "pred":
            preds[str(part[1])] = [tuple(_element(t) for t in row) if isinstance(row, list) else (_element(row),)
                                   for row in part[2:]]
        elif head == "op":
            table = {}
            for row in part[2:]:
                if not (isinstance(row, list) and len(row) == 2 and isinstance(row[0], list)):
                    raise ParseError("operation rows are ((args...) value)", getattr(row, "pos", None))
                table[tuple(_element(t) for t in row[0])] = _element(row[1])
            ops[str(part[1])] = table
        elif head == "classes":
            classes = {}
            for row in part[1:]:
                classes[str(row[0])] = frozenset(_element(t) for t in row[1:])
        else:
            raise ParseError(f"unknown structure entry {head!r}", part.pos)
    if carrier is None:
        raise ParseError("structure without carrier", x.pos)
    solvers = {}
    if "in" not in preds:
        preds["in"] = lambda a, b: isinstance(b, HfSet) and a in b
        solvers["in"] = _member_solver
    carriers = {SET: carrier}
    if classes is not None:
        carriers[CLASS] = list(classes.values())
        preds["class-in"] = lambda a, X: a in X
    return Structure(carriers, preds, ops, sig, solvers=solvers, name=name)


def read_structure(text: str, default_sig: str = "s", name: str = "") -> Structure:
    from ..sequent.io import header_signature

    header, body, offset = split_header(text)
    sig = header_signature(header, default_sig) if header else None
    items = read_all(body, offset)
    if len(items) != 1:
        raise ParseError(f"expected one structure, found {len(items)}", offset)
    return sexpr_to_structure(items[0], sig, name)


def parse_assignment(pairs, st: Structure) -> dict:
    """``x={}``, ``x=a`` or ``X:class=<index into classes>`` strings to an assignment."""
    from ..syntax.ast import Variable

    out = {}
    classes = dict(enumerate(st.carriers.get(CLASS, ())))
    for item in pairs:
        var, _, val = item.partition("=")
        if not _:
            raise ValueError(f"bad assignment {item!r}; use var=value")
        if ":" in var:
            vname, sort = var.split(":", 1)
            if sort != CLASS:
                raise ValueError(f"unknown sort {sort!r}")
            out[Variable(vname, CLASS)] = classes[int(val)]
        else:
            out[Variable(var)] = _element(val)
    return out


__all__ = ["parse_assignment", "read_structure", "sexpr_to_structure"]
