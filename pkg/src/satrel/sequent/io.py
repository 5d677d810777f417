"""Reading and writing proofs and sequents as s-expressions.

    (rule <name> (concl (seq (<f>...) (<f>...))) (data <key> <value>...) <child>...)

``data`` is optional; values are terms (``term``, ``eigen``) or integers
(``index``).
"""

from __future__ import annotations

from ..sexpr import ParseError, SList, Sym, read_all, read_one, split_header
from ..syntax.parser import sexpr_to_formula, sexpr_to_term
from ..syntax.printer import to_sexpr
from ..syntax.signature import BUILTIN, SortError, propositional
from .core import Proof, Sequent


def sequent_to_sexpr(s: Sequent) -> str:
    return f"(seq ({' '.join(map(to_sexpr, s.ante))}) ({' '.join(map(to_sexpr, s.succ))}))"


def _head(x):
    return x[0] if isinstance(x, SList) and x and isinstance(x[0], Sym) else None


def sexpr_to_sequent(x, sig) -> Sequent:
    if _head(x) != "seq" or len(x) != 3 or not all(isinstance(p, SList) for p in x[1:]):
        raise ParseError("expected (seq (<formulas>) (<formulas>))", getattr(x, "pos", 0))
    return Sequent([sexpr_to_formula(f, sig) for f in x[1]], [sexpr_to_formula(f, sig) for f in x[2]])


def parse_sequent(text: str, sig) -> Sequent:
    return sexpr_to_sequent(read_one(text), sig)


def sexpr_to_proof(x, sig) -> Proof:
    if _head(x) != "rule" or len(x) < 3 or not isinstance(x[1], Sym):
        raise ParseError("expected (rule <name> (concl ...) ...)", getattr(x, "pos", 0))
    name = str(x[1])
    c = x[2]
    if _head(c) != "concl" or len(c) != 2:
        raise ParseError("expected (concl (seq ...))", getattr(c, "pos", 0))
    concl = sexpr_to_sequent(c[1], sig)
    rest = list(x[3:])
    data = {}
    if rest and _head(rest[0]) == "data":
        items = list(rest.pop(0)[1:])
        if len(items) % 2:
            raise ParseError("data needs key/value pairs", getattr(x, "pos", 0))
        for k, v in zip(items[::2], items[1::2]):
            k = str(k)
            if k == "index":
                try:
                    data[k] = int(str(v))
                except ValueError:
                    raise ParseError("index must be an integer", getattr(v, "pos", 0)) from None
            else:
                data[k] = sexpr_to_term(v, sig)
    children = [sexpr_to_proof(y, sig) for y in rest]
    return Proof(name, concl, children, data)


def proof_to_sexpr(p: Proof, indent: int = 0) -> str:
    pad = "  " * indent
    head = f"{pad}(rule {p.rule} (concl {sequent_to_sexpr(p.concl)})"
    if p.data:
        parts = []
        for k in sorted(p.data):
            v = p.data[k]
            parts.append(f"{k} {v if isinstance(v, int) else to_sexpr(v)}")
        head += f" (data {' '.join(parts)})"
    if not p.premises:
        return head + ")"
    kids = "\n".join(proof_to_sexpr(q, indent + 1) for q in p.premises)
    return f"{head}\n{kids})"


def header_signature(header: dict, default="s"):
    """Signature named in a file header, plus nullary ``atoms`` if listed."""
    name = header.get("signature", default)
    sig = BUILTIN.get(name) or BUILTIN.get(name.lower())
    if sig is None:
        raise SortError(f"unknown signature {name!r}")
    atoms = header.get("atoms")
    if atoms:
        sig = propositional(tuple(atoms), sig)
    return sig


def read_proof_file(text: str, default_sig="s"):
    """Parse an optional header and one proof; returns (proof, signature, header)."""
    header, body, offset = split_header(text)
    sig = header_signature(header, default_sig)
    items = read_all(body, offset)
    if len(items) != 1:
        raise ParseError(f"expected exactly one proof, found {len(items)}", offset)
    return sexpr_to_proof(items[0], sig), sig, header


def read_sequent_file(text: str, default_sig="s"):
    header, body, offset = split_header(text)
    sig = header_signature(header, default_sig)
    items = read_all(body, offset)
    if len(items) != 1:
        raise ParseError(f"expected exactly one sequent, found {len(items)}", offset)
    return sexpr_to_sequent(items[0], sig), sig, header
