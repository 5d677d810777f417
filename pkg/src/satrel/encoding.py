"""Encoding expressions as hereditarily finite sets, and canonical names.

Every node is the Kuratowski pair ``(tag, fields)`` where ``tag`` is the
Ackermann code of a small integer and ``fields`` is a right-nested tuple of
pairs ending in the empty set.  Names (of variables, sorts and symbols) are
stored as the Ackermann code of their UTF-8 bytes.  Because a pair has rank
two above its components, every proper subexpression gets a strictly smaller
rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .hf import HfSet, empty, hf, kpair, stage, unpair, adjoin
from .syntax.ast import (
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
)


class _NotAnExpression:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotAnExpression"


NotAnExpression = _NotAnExpression()

TAGS = {
    Variable: 0,
    Apply: 1,
    Atom: 2,
    Equal: 3,
    Neg: 4,
    And: 5,
    Or: 6,
    Implies: 7,
    Iff: 8,
    Exists: 9,
    Forall: 10,
    ClassTerm: 11,
}
_BY_TAG = {v: k for k, v in TAGS.items()}


@lru_cache(maxsize=None)
def ackermann(n: int) -> HfSet:
    """The set {ack(i) : bit i of n is set}; a bijection between N and HF."""
    if n < 0:
        raise ValueError("negative")
    elems = []
    i = 0
    while n >> i:
        if (n >> i) & 1:
            elems.append(ackermann(i))
        i += 1
    return HfSet.of(elems)


def ackermann_inverse(x: HfSet) -> int:
    return sum(1 << ackermann_inverse(c) for c in x.children)


_TAG_SETS = {k: ackermann(k) for k in range(len(TAGS))}
_TAG_OF_SET = {s: k for k, s in _TAG_SETS.items()}


def _enc_str(s: str) -> HfSet:
    return ackermann(int.from_bytes(b"\x01" + s.encode("utf-8"), "big"))


def _dec_str(x: HfSet):
    n = ackermann_inverse(x)
    raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if not raw or raw[0] != 1:
        return None
    try:
        return raw[1:].decode("utf-8")
    except UnicodeDecodeError:
        return None


def _tuple(items) -> HfSet:
    out = empty()
    for it in reversed(list(items)):
        out = kpair(it, out)
    return out


def _untuple(x: HfSet):
    items = []
    while x.children:
        p = unpair(x)
        if p is None:
            return None
        items.append(p[0])
        x = p[1]
    return items


@lru_cache(maxsize=1 << 16)
def encode(e) -> HfSet:
    t = type(e)
    if t is Variable:
        fields = [_enc_str(e.name), _enc_str(e.sort)]
    elif t is Apply:
        fields = [_enc_str(e.op), _tuple(encode(a) for a in e.args)]
    elif t is Atom:
        fields = [_enc_str(e.pred), _tuple(encode(a) for a in e.args)]
    elif t is Equal:
        fields = [encode(e.left), encode(e.right)]
    elif t is Neg:
        fields = [encode(e.body)]
    elif t in (And, Or, Implies, Iff):
        fields = [encode(e.left), encode(e.right)]
    elif t in (Exists, Forall, ClassTerm):
        fields = [encode(e.var), encode(e.body)]
    else:
        raise TypeError(f"cannot encode {e!r}")
    return kpair(_TAG_SETS[TAGS[t]], _tuple(fields))


def decode(x: HfSet):
    """Inverse of :func:`encode`; NotAnExpression outside the image."""
    try:
        e = _decode(x)
    except _Bad:
        return NotAnExpression
    # the checks in _decode are loose; re-encoding pins down the image exactly
    if encode(e) is not x:
        return NotAnExpression
    return e


class _Bad(Exception):
    pass


def _decode(x: HfSet):
    p = unpair(x)
    if p is None or p[0] not in _TAG_OF_SET:
        raise _Bad
    cls = _BY_TAG[_TAG_OF_SET[p[0]]]
    fields = _untuple(p[1])
    if fields is None:
        raise _Bad
    if cls is Variable:
        if len(fields) != 2:
            raise _Bad
        name, sort = _dec_str(fields[0]), _dec_str(fields[1])
        if not name or not sort:
            raise _Bad
        return Variable(name, sort)
    if cls in (Apply, Atom):
        if len(fields) != 2:
            raise _Bad
        head = _dec_str(fields[0])
        args = _untuple(fields[1])
        if not head or args is None:
            raise _Bad
        return cls(head, [_decode(a) for a in args])
    if cls is Neg:
        if len(fields) != 1:
            raise _Bad
        return Neg(_formula(_decode(fields[0])))
    if len(fields) != 2:
        raise _Bad
    a, b = _decode(fields[0]), _decode(fields[1])
    if cls is Equal:
        if not (isinstance(a, Term) and isinstance(b, Term)):
            raise _Bad
        return Equal(a, b)
    if cls in (Exists, Forall, ClassTerm):
        if not isinstance(a, Variable):
            raise _Bad
        return cls(a, _formula(b))
    return cls(_formula(a), _formula(b))


def _formula(f):
    if not isinstance(f, Formula):
        raise _Bad
    return f


# ------------------------------------------------------------ canonical names


@dataclass(frozen=True)
class CanonicalName:
    target: HfSet
    term: Term


@lru_cache(maxsize=None)
def _name_term(x: HfSet) -> Term:
    t: Term = Apply("empty")
    for y in x.children:
        t = Apply("adjoin", (t, _name_term(y)))
    return t


def canonical_name(x: HfSet) -> CanonicalName:
    """x̂ = ((0 ↶ ŷ1) ↶ ŷ2) ... with y1 < y2 < ... in canonical order."""
    return CanonicalName(x, _name_term(x))


def hf_value(t: Term) -> HfSet:
    """Value of a closed empty/adjoin term in HF (small helper, no structure needed)."""
    if isinstance(t, Apply) and t.op == "empty" and not t.args:
        return empty()
    if isinstance(t, Apply) and t.op == "adjoin" and len(t.args) == 2:
        return adjoin(hf_value(t.args[0]), hf_value(t.args[1]))
    raise ValueError(f"not a closed s'-term: {t}")


# ------------------------------------------------------------ Φ_n


def phi_class(n: int, sig=None) -> list:
    """Φ_n: formulas (over sig, if given) whose encoding has rank < n.

    Computed by decoding every element of stage(n); n is capped by stage().
    """
    out = []
    for x in stage(n):
        e = decode(x)
        if isinstance(e, Formula) and (sig is None or _fits(e, sig)):
            out.append(e)
    return out


def _fits(f, sig) -> bool:
    from .syntax.parser import sexpr_to_formula
    from .sexpr import read_one
    from .syntax.printer import to_sexpr
    from .syntax.signature import SortError

    try:
        return sexpr_to_formula(read_one(to_sexpr(f)), sig) == f
    except (SortError, ValueError):
        return False


def min_formula_rank(sig, var_names=("u",)) -> int:
    """Rank of the cheapest atomic formula over sig using the given variable names.

    One-character names already cost rank 4 as strings, so this is also the
    floor over all names of that length.
    """
    cands = []
    vs = [Variable(v) for v in var_names]
    for v in vs:
        for w in vs:
            cands.append(Equal(v, w))
            if sig.has_predicate("in"):
                cands.append(Atom("in", (v, w)))
    for p, args in sig.predicates:
        if not args:
            cands.append(Atom(p, ()))
    return min(encode(c).rank for c in cands)


__all__ = [
    "encode",
    "decode",
    "NotAnExpression",
    "CanonicalName",
    "canonical_name",
    "phi_class",
    "ackermann",
    "ackermann_inverse",
    "hf_value",
    "min_formula_rank",
    "hf",
]
