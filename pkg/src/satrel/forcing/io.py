"""Poset and name files.

Poset file::

    (poset (elements 1 a b) (covers (a 1) (b 1)))

where (a 1) says a < 1.  Name file::

    (names
      (x (name (((name ()) a))))
      (y (check {{}}))
      (z (name ((x 1) (y b)))))

A name is (name ((<name> <cond>) ...)), (check <HF literal>) or a
previously defined name.
"""

from __future__ import annotations

from ..hf import parse_literal
from ..sexpr import ParseError, read_all, split_header
from .names import PName, check
from .poset import Poset


def _one(text, head):
    _, body, offset = split_header(text)
    items = read_all(body, offset)
    if len(items) != 1 or not (isinstance(items[0], list) and items[0] and items[0][0] == head):
        raise ParseError(f"expected one ({head} ...) form", offset)
    return items[0]


def read_poset(text: str) -> Poset:
    x = _one(text, "poset")
    elements, covers = None, []
    for part in x[1:]:
        if isinstance(part, list) and part and part[0] == "elements":
            elements = [str(e) for e in part[1:]]
        elif isinstance(part, list) and part and part[0] == "covers":
            for c in part[1:]:
                if not (isinstance(c, list) and len(c) == 2):
                    raise ParseError("covers are (lower upper) pairs", getattr(c, "pos", None))
                covers.append((str(c[0]), str(c[1])))
        else:
            raise ParseError("poset entries are (elements ...) and (covers ...)", getattr(part, "pos", None))
    if elements is None:
        raise ParseError("poset without elements", x.pos)
    return Poset.from_covers(elements, covers)


def sexpr_to_name(x, P: Poset, defined: dict) -> PName:
    if isinstance(x, str):
        if x not in defined:
            raise ParseError(f"unknown name {x!r}", getattr(x, "pos", None))
        return defined[x]
    if x and x[0] == "check" and len(x) == 2:
        return check(parse_literal(str(x[1])), P.top)
    if x and x[0] == "name" and len(x) == 2 and isinstance(x[1], list):
        pairs = []
        for pair in x[1]:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ParseError("name entries are (<name> <cond>)", getattr(pair, "pos", None))
            cond = str(pair[1])
            if cond not in P.elements:
                raise ParseError(f"unknown condition {cond!r}", getattr(pair[1], "pos", None))
            pairs.append((sexpr_to_name(pair[0], P, defined), cond))
        return PName(pairs)
    raise ParseError("expected (name (...)), (check <set>) or a defined name", getattr(x, "pos", None))


def read_names(text: str, P: Poset) -> dict:
    """Name file to {label: PName}, in file order."""
    x = _one(text, "names")
    out: dict = {}
    for entry in x[1:]:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], str)):
            raise ParseError("entries are (<label> <name>)", getattr(entry, "pos", None))
        label = str(entry[0])
        name = sexpr_to_name(entry[1], P, out)
        out[label] = PName(name.pairs, label=label)
    return out


def poset_to_text(P: Poset) -> str:
    els = " ".join(map(str, P.elements))
    cov = " ".join(f"({p} {q})" for p, q in P.covers())
    return f"(poset (elements {els}) (covers {cov}))"


__all__ = ["poset_to_text", "read_names", "read_poset", "sexpr_to_name"]
