"""Finite posets with a top element, and their generic filters."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations, permutations, product


class PosetError(ValueError):
    pass


class Poset:
    """A finite partial order; ``le`` holds the pairs (p, q) with p ≤ q.

    Smaller is stronger: conditions below p extend p.
    """

    def __init__(self, elements, le, top=None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("repeated elements")
        S = set(self.elements)
        le = {(p, q) for p, q in le}
        if not all(p in S and q in S for p, q in le):
            raise PosetError("order mentions unknown elements")
        le |= {(p, p) for p in S}
        for p, q in le:
            if p != q and (q, p) in le:
                raise PosetError(f"not antisymmetric: {p}, {q}")
        for (p, q), (q2, r) in product(le, le):
            if q == q2 and (p, r) not in le:
                raise PosetError(f"not transitive: {p} ≤ {q} ≤ {r}")
        self.le_pairs = frozenset(le)
        tops = [t for t in self.elements if all((p, t) in le for p in S)]
        if not tops:
            raise PosetError("no top element")
        if top is not None and top != tops[0]:
            raise PosetError(f"{top} is not the top element")
        self.top = tops[0]

    @classmethod
    def from_covers(cls, elements, covers):
        """covers: pairs (p, q) meaning p < q; the order is their reflexive-transitive closure."""
        le = set(covers)
        changed = True
        while changed:
            changed = False
            for (p, q), (q2, r) in list(product(le, le)):
                if q == q2 and (p, r) not in le:
                    le.add((p, r))
                    changed = True
        return cls(elements, le)

    def le(self, p, q) -> bool:
        return (p, q) in self.le_pairs

    @cached_property
    def _below(self):
        return {p: tuple(q for q in self.elements if (q, p) in self.le_pairs) for p in self.elements}

    def below(self, p) -> tuple:
        """All q ≤ p."""
        return self._below[p]

    def up(self, p) -> frozenset:
        return frozenset(q for q in self.elements if (p, q) in self.le_pairs)

    @cached_property
    def minimal(self) -> tuple:
        return tuple(p for p in self.elements if self.below(p) == (p,))

    def covers(self) -> list:
        out = []
        for p, q in sorted(self.le_pairs, key=repr):
            if p != q and not any(r not in (p, q) and self.le(p, r) and self.le(r, q) for r in self.elements):
                out.append((p, q))
        return out

    def compatible(self, p, q) -> bool:
        return any(self.le(r, q) for r in self.below(p))

    def dense_below(self, p, D) -> bool:
        """Every q ≤ p has some r ≤ q in D."""
        return all(any(r in D for r in self.below(q)) for q in self.below(p))

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, Poset) and set(self.elements) == set(other.elements) and self.le_pairs == other.le_pairs

    def __hash__(self):
        return hash((frozenset(self.elements), self.le_pairs))

    def __repr__(self):
        cov = " ".join(f"{p}<{q}" for p, q in self.covers())
        return f"Poset({' '.join(map(str, self.elements))}; {cov})"


def is_filter(P: Poset, F) -> bool:
    F = frozenset(F)
    if not F:
        return False
    upward = all(q in F for p in F for q in P.up(p))
    directed = all(any(r in F and P.le(r, p) and P.le(r, q) for r in P.elements) for p in F for q in F)
    return upward and directed


class GenericFilter(frozenset):
    """A filter meeting every dense subset of its poset."""

    def __new__(cls, P: Poset, conditions):
        self = super().__new__(cls, conditions)
        if not is_filter(P, self):
            raise PosetError(f"{sorted(self, key=repr)} is not a filter")
        return self


def generic_filters(P: Poset) -> list:
    """The upward closures of the minimal elements."""
    return [GenericFilter(P, P.up(m)) for m in P.minimal]


def chain(n: int) -> Poset:
    """1 > c1 > c2 > ... with n elements."""
    els = ["1"] + [f"c{k}" for k in range(1, n)]
    return Poset.from_covers(els, [(els[k + 1], els[k]) for k in range(n - 1)])


def antichain_below_top(labels=("a", "b")) -> Poset:
    return Poset.from_covers(["1", *labels], [(a, "1") for a in labels])


def _orders(n: int):
    """All partial orders on range(n), as sets of strict pairs."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    for k in range(len(pairs) + 1):
        for chosen in combinations(pairs, k):
            s = set(chosen)
            if any((j, i) in s for i, j in s):
                continue
            if all((i, l) in s for i, j in s for j2, l in s if j == j2 and i != l):
                yield frozenset(s)


def _canonical(n: int, order) -> tuple:
    return min(tuple(sorted((perm[i], perm[j]) for i, j in order)) for perm in permutations(range(n)))


def posets_up_to_iso(max_size: int) -> list:
    """One poset with a top per isomorphism type, of sizes 1..max_size.

    A finite poset with a top is a poset with a new greatest element added.
    """
    names = "abcdefgh"
    out = []
    for n in range(max_size):
        seen = set()
        for order in _orders(n):
            key = _canonical(n, order)
            if key in seen:
                continue
            seen.add(key)
            els = [names[i] for i in range(n)]
            le = {(names[i], names[j]) for i, j in key} | {(e, "1") for e in els}
            out.append(Poset(["1", *els], le))
    return out


__all__ = [
    "GenericFilter",
    "Poset",
    "PosetError",
    "antichain_below_top",
    "chain",
    "generic_filters",
    "is_filter",
    "posets_up_to_iso",
]
