"""Hereditarily finite sets in canonical form.

Every :class:`HfSet` is hash-consed: two sets are extensionally equal exactly
when they are the same Python object.  Children are kept sorted under a fixed
total order (recursive lexicographic comparison of sorted child lists), so the
structure of a set is a canonical form.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

__all__ = [
    "HfSet",
    "StageTooLarge",
    "empty",
    "adjoin",
    "rank",
    "stage",
    "hf",
    "ordinal",
    "kpair",
    "unpair",
    "transitive_closure",
    "parse_literal",
    "MAX_STAGE",
]

MAX_STAGE = 5


class StageTooLarge(ValueError):
    pass


class HfSet:
    __slots__ = ("children", "rank", "_key", "_hash", "_members", "__weakref__")

    _table: dict = {}

    children: tuple
    rank: int

    def __new__(cls, *args, **kwargs):
        raise TypeError("use hf(...) / empty() / adjoin(...) to build sets")

    @classmethod
    def _make(cls, children: tuple) -> "HfSet":
        # children must already be sorted and duplicate-free
        ids = tuple(id(c) for c in children)
        found = cls._table.get(ids)
        if found is not None:
            return found
        obj = object.__new__(cls)
        obj.children = children
        obj.rank = 1 + max(c.rank for c in children) if children else 0
        obj._key = tuple(c._key for c in children)
        obj._hash = hash(ids)
        obj._members = None
        cls._table[ids] = obj
        return obj

    @classmethod
    def of(cls, elements: Iterable["HfSet"]) -> "HfSet":
        uniq = {id(e): e for e in elements}
        return cls._make(tuple(sorted(uniq.values(), key=_order_key)))

    # identity is extensional equality thanks to hash-consing
    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "HfSet"):
        return self._key < other._key

    def __le__(self, other: "HfSet"):
        return self._key <= other._key

    def __gt__(self, other: "HfSet"):
        return self._key > other._key

    def __ge__(self, other: "HfSet"):
        return self._key >= other._key

    def __contains__(self, item) -> bool:
        if self._members is None:
            self._members = frozenset(self.children)
        return item in self._members

    def __iter__(self):
        return iter(self.children)

    def __len__(self):
        return len(self.children)

    def __bool__(self):
        return bool(self.children)

    def __reduce__(self):
        return (hf, tuple(self.children))

    def __repr__(self):
        return f"HfSet({self})"

    def __str__(self):
        return to_literal(self)

    def is_ordinal(self) -> bool:
        return self is ordinal(len(self.children))

    def is_subset(self, other: "HfSet") -> bool:
        return all(c in other for c in self.children)


def _order_key(x: HfSet):
    return x._key


def empty() -> HfSet:
    return HfSet._make(())


def hf(*elements: HfSet) -> HfSet:
    """Set with the given elements, e.g. ``hf(empty(), hf(empty()))``."""
    return HfSet.of(elements)


def adjoin(x: HfSet, y: HfSet) -> HfSet:
    """x ∪ {y}."""
    if y in x:
        return x
    return HfSet.of(x.children + (y,))


def rank(x: HfSet) -> int:
    return x.rank


_ordinals: list = []


def ordinal(n: int) -> HfSet:
    """von Neumann natural number n = {0, ..., n-1}."""
    if n < 0:
        raise ValueError("negative ordinal")
    while len(_ordinals) <= n:
        _ordinals.append(HfSet.of(_ordinals[: len(_ordinals)]))
    return _ordinals[n]


def kpair(a: HfSet, b: HfSet) -> HfSet:
    """Kuratowski pair {{a}, {a, b}}."""
    return hf(hf(a), hf(a, b))


def unpair(p: HfSet):
    """Inverse of :func:`kpair`; returns ``None`` if ``p`` is not a pair."""
    ch = p.children
    if len(ch) == 1:
        (only,) = ch
        if len(only) == 1:
            a = only.children[0]
            return a, a
        return None
    if len(ch) != 2:
        return None
    s, t = (ch[0], ch[1]) if len(ch[0]) == 1 else (ch[1], ch[0])
    if len(s) != 1 or len(t) != 2:
        return None
    a = s.children[0]
    if a not in t:
        return None
    b = t.children[0] if t.children[1] is a else t.children[1]
    return a, b


def transitive_closure(xs: Iterable[HfSet]) -> set:
    """Smallest transitive set containing every x in ``xs`` as a member."""
    seen: set = set()
    todo = list(xs)
    while todo:
        x = todo.pop()
        if x in seen:
            continue
        seen.add(x)
        todo.extend(x.children)
    return seen


_stages: list = []


def stage(n: int) -> tuple:
    """V_n: all sets of rank < n, in canonical order."""
    if n < 0:
        raise ValueError("negative stage")
    if n > MAX_STAGE:
        raise StageTooLarge(f"stage({n}) has more than 2**65536 elements; cap is {MAX_STAGE}")
    if not _stages:
        _stages.append(())
    while len(_stages) <= n:
        prev = _stages[-1]
        # subsets of a sorted tuple come out sorted, so _make is safe
        subsets = [
            HfSet._make(combo)
            for k in range(len(prev) + 1)
            for combo in combinations(prev, k)
        ]
        _stages.append(tuple(sorted(subsets, key=_order_key)))
    return _stages[n]


def to_literal(x: HfSet) -> str:
    return "{" + " ".join(to_literal(c) for c in x.children) + "}"


def parse_literal(text: str) -> HfSet:
    """Parse ``{}``, ``{{} {{}}}`` and the like.  Whitespace separates children."""
    pos = 0
    n = len(text)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_one() -> HfSet:
        nonlocal pos
        skip()
        if pos >= n or text[pos] != "{":
            raise ValueError(f"expected '{{' at position {pos}")
        pos += 1
        items = []
        while True:
            skip()
            if pos >= n:
                raise ValueError("unterminated set literal")
            if text[pos] == "}":
                pos += 1
                return HfSet.of(items)
            items.append(parse_one())

    result = parse_one()
    skip()
    if pos != n:
        raise ValueError(f"trailing input at position {pos}")
    return result


# encodings live in their own module; re-exported here for convenience
from .encoding import (  # noqa: E402
    CanonicalName,
    NotAnExpression,
    canonical_name,
    decode,
    encode,
)
