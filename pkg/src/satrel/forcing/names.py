"""P-names: finite sets of (name, condition) pairs, and their values."""

from __future__ import annotations

from functools import lru_cache

from ..hf import HfSet, empty


class RankBoundExceeded(ValueError):
    pass


class PName:
    """A P-name; ``pairs`` is a frozenset of (PName, condition)."""

    __slots__ = ("pairs", "rank", "label", "_hash")

    def __init__(self, pairs=(), label: str | None = None):
        self.pairs = frozenset(pairs)
        for y, _ in self.pairs:
            if not isinstance(y, PName):
                raise TypeError(f"constituent {y!r} is not a P-name")
        self.rank = max((y.rank + 1 for y, _ in self.pairs), default=0)
        self.label = label
        self._hash = hash(self.pairs)

    def __eq__(self, other):
        return isinstance(other, PName) and self._hash == other._hash and self.pairs == other.pairs

    def __hash__(self):
        return self._hash

    def constituents(self) -> set:
        """All names reachable through pairs, including self."""
        out, todo = set(), [self]
        while todo:
            x = todo.pop()
            if x not in out:
                out.add(x)
                todo.extend(y for y, _ in x.pairs)
        return out

    def conditions(self) -> set:
        return {p for x in self.constituents() for _, p in x.pairs}

    def __repr__(self):
        return self.label or to_text(self)


def to_text(x: PName) -> str:
    """Name s-expression: (name ((<name> <cond>) ...))."""
    parts = sorted(f"({to_text(y)} {p})" for y, p in x.pairs)
    return "(name (" + " ".join(parts) + "))"


def check(a: HfSet, top) -> PName:
    """The canonical name ǎ = {(b̌, 1) : b ∈ a}."""
    return PName((check(b, top), top) for b in a.children)


@lru_cache(maxsize=None)
def value_of(x: PName, G: frozenset) -> HfSet:
    """x^G = {y^G : (y, p) ∈ x, p ∈ G}."""
    if not x.pairs:
        return empty()
    return HfSet.of(value_of(y, G) for y, p in x.pairs if p in G)


def check_rank(names, bound: int):
    for x in names:
        if x.rank > bound:
            raise RankBoundExceeded(f"name {x!r} has rank {x.rank} > {bound}")


def name_pool(P, rank_bound: int = 2) -> list:
    """A downward closed pool of names over P.

    Rank 0 and 1 are exhaustive up to the conditions used: ∅ and
    {(∅, p)} for every p, plus {(∅, p), (∅, q)} for incomparable p, q.
    Rank 2 adds check names and names putting one of those under a
    condition.
    """
    top = P.top
    zero = PName(label="0")
    pool = [zero]
    ones = {}
    for p in P.elements:
        ones[p] = PName([(zero, p)], label=f"s{p}")
        pool.append(ones[p])
    els = list(P.elements)
    for i, p in enumerate(els):
        for q in els[i + 1:]:
            if not P.le(p, q) and not P.le(q, p):
                pool.append(PName([(zero, p), (zero, q)], label=f"s{p}{q}"))
    if rank_bound >= 2:
        one = ones[top]
        pool.append(PName([(one, top)], label="c2"))
        pool.append(PName([(zero, top), (one, top)], label="c3"))
        for m in P.minimal:
            if m != top:
                pool.append(PName([(ones[m], top)], label=f"t{m}"))
                pool.append(PName([(one, m)], label=f"u{m}"))
    seen, out = set(), []
    for x in pool:
        if x not in seen:
            seen.add(x)
            out.append(x)
    check_rank(out, rank_bound)
    return out


__all__ = ["PName", "RankBoundExceeded", "check", "check_rank", "name_pool", "to_text", "value_of"]
