"""Validity of atomic sequents in pure equality logic (congruence closure).

An atomic sequent Γ ⇒ Δ is valid iff the congruence closure of the
equations in Γ makes some member of Δ true: an equation s = t with s ~ t,
or an atom P(t̄) congruent to an atom P(s̄) of Γ.  (Equality with
uninterpreted symbols is convex, so a disjunction is entailed only if one of
its disjuncts is.)
"""

from __future__ import annotations

from ..syntax.ast import Apply, Atom, ClassTerm, Equal, Variable
from ..syntax.ops import alpha_key


class Congruence:
    def __init__(self, terms=()):
        self.parent: dict = {}
        self.apps: list = []  # (term, op, args)
        for t in terms:
            self.add(t)

    def add(self, t):
        if t in self.parent:
            return
        self.parent[t] = t
        if isinstance(t, Apply):
            for a in t.args:
                self.add(a)
            self.apps.append(t)

    def find(self, t):
        p = self.parent
        root = t
        while p[root] != root:
            root = p[root]
        while p[t] != root:
            nxt = p[t]
            p[t] = root
            t = nxt
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # keep the smaller term as representative for readable output
        if (len(str(rb)), str(rb)) < (len(str(ra)), str(ra)):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def close(self):
        changed = True
        while changed:
            changed = False
            sig: dict = {}
            for t in self.apps:
                key = (t.op, tuple(self.find(a) for a in t.args))
                other = sig.get(key)
                if other is None:
                    sig[key] = t
                elif self.union(t, other):
                    changed = True

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)


def _term(t):
    # class terms are treated as opaque constants, identified up to alpha
    return alpha_key(t) if isinstance(t, ClassTerm) else t


def build(ante) -> Congruence:
    cc = Congruence()
    for f in ante:
        if isinstance(f, Equal):
            cc.add(_term(f.left))
            cc.add(_term(f.right))
        elif isinstance(f, Atom):
            for a in f.args:
                cc.add(_term(a))
    for f in ante:
        if isinstance(f, Equal):
            cc.union(_term(f.left), _term(f.right))
    cc.close()
    return cc


def entails(cc: Congruence, ante, goal) -> bool:
    if isinstance(goal, Equal):
        a, b = _term(goal.left), _term(goal.right)
        if a == b:
            return True
        cc.add(a)
        cc.add(b)
        cc.close()
        return cc.same(a, b)
    if isinstance(goal, Atom):
        args = [_term(a) for a in goal.args]
        for a in args:
            cc.add(a)
        cc.close()
        for f in ante:
            if isinstance(f, Atom) and f.pred == goal.pred and len(f.args) == len(args):
                if all(cc.same(_term(x), y) for x, y in zip(f.args, args)):
                    return True
        return False
    return False


def is_atomic(f) -> bool:
    return isinstance(f, (Atom, Equal))


def eq_valid(ante, succ) -> bool:
    """Is the atomic sequent ante ⇒ succ valid in equality logic?"""
    ante = [f for f in ante if is_atomic(f)]
    succ = [f for f in succ if is_atomic(f)]
    if not succ:
        return False
    cc = build(ante)
    return any(entails(cc, ante, g) for g in succ)


__all__ = ["Congruence", "eq_valid", "build", "entails", "Variable"]
