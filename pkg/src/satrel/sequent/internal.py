"""A set-based working calculus used for cut elimination and proof search.

Sequents are pairs of frozensets of alpha-normal formulas.  Every rule keeps
its principal formula in the premises (contraction is built in), and a
premise only has to be *contained* in the conclusion plus the side formulas
(weakening is built in).  ``ax`` closes any sequent with a formula on both
sides or whose atomic part is valid in equality logic.

Proofs in this calculus are translated to and from the ordered LK proofs of
``core`` by ``import_proof`` and ``export_proof``.
"""

from __future__ import annotations

import itertools

from ..syntax.ast import And, Exists, Forall, Iff, Implies, Neg, Or, Variable
from ..syntax.ops import alpha_key, free_vars, rename_bound, substitute
from ..syntax.printer import to_sexpr
from .core import Proof, Sequent
from .eqlogic import eq_valid, is_atomic

canon = alpha_key


class ISeq:
    __slots__ = ("ante", "succ", "_fv")

    def __init__(self, ante, succ):
        self.ante = frozenset(ante)
        self.succ = frozenset(succ)
        self._fv = None

    @classmethod
    def of(cls, ante, succ):
        return cls((canon(f) for f in ante), (canon(f) for f in succ))

    def free_vars(self):
        if self._fv is None:
            self._fv = frozenset().union(*(free_vars(f) for f in self.ante | self.succ))
        return self._fv

    def le(self, other, extra_ante=(), extra_succ=()) -> bool:
        return self.ante <= other.ante.union(extra_ante) and self.succ <= other.succ.union(extra_succ)

    def __eq__(self, other):
        return isinstance(other, ISeq) and self.ante == other.ante and self.succ == other.succ

    def __hash__(self):
        return hash((self.ante, self.succ))

    def __repr__(self):
        return f"ISeq({sorted(map(to_sexpr, self.ante))} ⇒ {sorted(map(to_sexpr, self.succ))})"


class INode:
    """rule, conclusion, premises, and data (principal, term/eigen, cut formula)."""

    __slots__ = ("rule", "concl", "premises", "principal", "term", "eigen")

    def __init__(self, rule, concl, premises=(), principal=None, term=None, eigen=None):
        self.rule = rule
        self.concl = concl
        self.premises = tuple(premises)
        self.principal = principal
        self.term = term
        self.eigen = eigen

    def with_(self, concl=None, premises=None, eigen=None, term=None):
        return INode(
            self.rule,
            self.concl if concl is None else concl,
            self.premises if premises is None else premises,
            self.principal,
            self.term if term is None else term,
            self.eigen if eigen is None else eigen,
        )

    def height(self):
        return 1 + max((p.height() for p in self.premises), default=0)

    def size(self):
        return 1 + sum(p.size() for p in self.premises)


# ------------------------------------------------------------ rule shapes


def instance(q, t):
    return canon(substitute(q.body, {q.var: t}))


def side_formulas(rule, principal, term=None, eigen=None):
    """[(extra antecedent, extra succedent) per premise] for a logical rule."""
    A = principal
    if rule == "notL":
        return [((), (A.body,))]
    if rule == "notR":
        return [((A.body,), ())]
    if rule == "andL":
        return [((A.left, A.right), ())]
    if rule == "andR":
        return [((), (A.left,)), ((), (A.right,))]
    if rule == "orL":
        return [((A.left,), ()), ((A.right,), ())]
    if rule == "orR":
        return [((), (A.left, A.right))]
    if rule == "impL":
        return [((), (A.left,)), ((A.right,), ())]
    if rule == "impR":
        return [((A.left,), (A.right,))]
    if rule == "iffL":
        return [((), (A.left, A.right)), ((A.left, A.right), ())]
    if rule == "iffR":
        return [((A.left,), (A.right,)), ((A.right,), (A.left,))]
    if rule == "allL":
        return [((instance(A, term),), ())]
    if rule == "allR":
        return [((), (instance(A, eigen),))]
    if rule == "exL":
        return [((instance(A, eigen),), ())]
    if rule == "exR":
        return [((), (instance(A, term),))]
    if rule == "cut":
        return [((), (A,)), ((A,), ())]
    raise ValueError(rule)


LEFT = {"notL", "andL", "orL", "impL", "iffL", "allL", "exL"}
RIGHT = {"notR", "andR", "orR", "impR", "iffR", "allR", "exR"}
KIND = {
    Neg: ("notL", "notR"),
    And: ("andL", "andR"),
    Or: ("orL", "orR"),
    Implies: ("impL", "impR"),
    Iff: ("iffL", "iffR"),
    Forall: ("allL", "allR"),
    Exists: ("exL", "exR"),
}


def ax_valid(ante, succ) -> bool:
    if not ante.isdisjoint(succ):
        return True
    return eq_valid([f for f in ante if is_atomic(f)], [f for f in succ if is_atomic(f)])


def check_inode(d: INode) -> str | None:
    """Return a reason if d is not a valid inference, else None (recursive)."""
    stack = [d]
    while stack:
        n = stack.pop()
        c = n.concl
        if n.rule == "ax":
            if n.premises or not ax_valid(c.ante, c.succ):
                return f"bad axiom {c}"
            continue
        if n.rule == "wk":
            if len(n.premises) != 1 or not n.premises[0].concl.le(c):
                return f"bad weakening {c}"
        else:
            A = n.principal
            if n.rule != "cut":
                where = c.ante if n.rule in LEFT else c.succ
                if A not in where or KIND.get(type(A), ("", ""))[n.rule in RIGHT] != n.rule:
                    return f"principal formula missing for {n.rule} at {c}"
            if n.eigen is not None and n.eigen in c.free_vars():
                return f"eigenvariable {n.eigen.name} free in conclusion"
            sides = side_formulas(n.rule, A, n.term, n.eigen)
            if len(sides) != len(n.premises):
                return f"wrong number of premises for {n.rule}"
            for p, (sa, ss) in zip(n.premises, sides):
                if not p.concl.le(c, sa, ss):
                    return f"premise {p.concl} not contained in {c} + sides for {n.rule}"
        stack.extend(n.premises)
    return None


# ------------------------------------------------------------ substitution


class Fresh:
    """Supply of eigenvariable names ``e#k`` not occurring anywhere else."""

    def __init__(self, used=()):
        self.used = set(used)
        self.counter = itertools.count()

    def var(self, sort):
        while True:
            name = f"e#{next(self.counter)}"
            if name not in self.used:
                self.used.add(name)
                return Variable(name, sort)


def subst_seq(s: ISeq, a, t) -> ISeq:
    if a not in s.free_vars():
        return s
    return ISeq(
        (canon(substitute(f, {a: t})) for f in s.ante),
        (canon(substitute(f, {a: t})) for f in s.succ),
    )


def psubst(d: INode, a: Variable, t, fresh: Fresh) -> INode:
    """Replace the free variable a by the term t throughout d."""
    if a not in d.concl.free_vars() and not _mentions(d, a):
        return d
    if d.eigen == a:
        return d  # a is bound here; the conclusion does not mention it
    prems = d.premises
    eigen = d.eigen
    tv = free_vars(t)
    if eigen is not None and eigen in tv:
        new = fresh.var(eigen.sort)
        prems = tuple(psubst(p, eigen, new, fresh) for p in prems)
        eigen = new
    prems = tuple(psubst(p, a, t, fresh) for p in prems)
    principal = d.principal
    if principal is not None:
        principal = canon(substitute(principal, {a: t}))
    term = d.term
    if term is not None:
        term = substitute(term, {a: t})
    return INode(d.rule, subst_seq(d.concl, a, t), prems, principal, term, eigen)


def _mentions(d, a) -> bool:
    # a may occur only in premises (as a free variable introduced above)
    stack = list(d.premises)
    while stack:
        n = stack.pop()
        if n.eigen == a:
            continue
        if a in n.concl.free_vars() or (n.term is not None and a in free_vars(n.term)):
            return True
        stack.extend(n.premises)
    return False


def proof_var_names(d: INode) -> set:
    names = set()
    stack = [d]
    while stack:
        n = stack.pop()
        names |= {v.name for v in n.concl.free_vars()}
        if n.eigen is not None:
            names.add(n.eigen.name)
        stack.extend(n.premises)
    return names


# ------------------------------------------------------------ import


_LK_TO_INTERNAL = {
    "notL": "notL", "notR": "notR",
    "andL1": "andL", "andL2": "andL", "andR": "andR",
    "orL": "orL", "orR1": "orR", "orR2": "orR",
    "impL": "impL", "impR": "impR", "iffL": "iffL", "iffR": "iffR",
    "allL": "allL", "allR": "allR", "exL": "exL", "exR": "exR",
}


def import_proof(p: Proof) -> INode:
    """Translate a checked LK proof into the working calculus."""
    memo: dict = {}

    def go(n: Proof) -> INode:
        key = id(n)
        if key in memo:
            return memo[key][1]
        concl = ISeq.of(n.concl.ante, n.concl.succ)
        prems = [go(q) for q in n.premises]
        r = n.rule
        if r in ("init", "eq"):
            out = INode("ax", concl)
        elif r in ("contrL", "contrR", "exchL", "exchR", "weakL", "weakR"):
            out = prems[0] if prems[0].concl == concl else INode("wk", concl, prems)
        elif r == "cut":
            out = INode("cut", concl, prems, canon(n.premises[0].concl.succ[-1]))
        else:
            principal = n.concl.ante[0] if r.endswith(("L", "L1", "L2")) else n.concl.succ[-1]
            out = INode(
                _LK_TO_INTERNAL[r],
                concl,
                prems,
                canon(principal),
                term=n.data.get("term"),
                eigen=n.data.get("eigen"),
            )
        memo[key] = (n, out)
        return out

    return go(p)


# ------------------------------------------------------------ export


def _order_key(f):
    return (len(to_sexpr(f)), to_sexpr(f))


class Exporter:
    """Build ordered LK proofs from working-calculus proofs.

    ``pretty`` maps alpha-normal formulas to the representative shown in the
    output (by default the endsequent's own subformulas).
    """

    def __init__(self, pretty=None):
        self.pretty = dict(pretty or {})

    def show(self, f):
        g = self.pretty.get(f)
        if g is None:
            g = rename_bound(f, {v.name for v in free_vars(f)}) if "%" in to_sexpr(f) else f
            self.pretty[f] = g
        return g

    def lists(self, s: ISeq):
        return (
            [self.show(f) for f in sorted(s.ante, key=_order_key)],
            [self.show(f) for f in sorted(s.succ, key=_order_key)],
        )

    # structural reshaping ---------------------------------------------

    def reshape(self, p: Proof, ante, succ) -> Proof:
        """Contract, weaken and exchange p's conclusion into exactly ante ⇒ succ.

        Every formula of p's conclusion must occur (up to alpha) in the target.
        """
        k = alpha_key
        # contract surplus copies
        p = self._contract(p, "L", {}, ante)
        p = self._contract(p, "R", {}, succ)
        # weaken in missing copies
        for side, target in (("L", ante), ("R", succ)):
            cur = p.concl.ante if side == "L" else p.concl.succ
            need: dict = {}
            for f in target:
                need[k(f)] = need.get(k(f), 0) + 1
            for f in cur:
                need[k(f)] -= 1
            for f in target:
                while need[k(f)] > 0:
                    need[k(f)] -= 1
                    if side == "L":
                        p = Proof("weakL", Sequent((f,) + p.concl.ante, p.concl.succ), [p])
                    else:
                        p = Proof("weakR", Sequent(p.concl.ante, p.concl.succ + (f,)), [p])
        p = self._sort(p, "L", ante)
        p = self._sort(p, "R", succ)
        return p

    def _contract(self, p, side, _unused, target):
        k = alpha_key
        allowed: dict = {}
        for f in target:
            allowed[k(f)] = allowed.get(k(f), 0) + 1
        while True:
            cur = list(p.concl.ante if side == "L" else p.concl.succ)
            counts: dict = {}
            for f in cur:
                counts[k(f)] = counts.get(k(f), 0) + 1
            dup = next((f for f in cur if counts[k(f)] > allowed.get(k(f), 0)), None)
            if dup is None:
                return p
            idx = [i for i, f in enumerate(cur) if k(f) == k(dup)][:2]
            if side == "L":
                # bring both copies to positions 0 and 1
                p = self._move(p, "L", idx[0], 0)
                cur = list(p.concl.ante)
                j = next(i for i in range(1, len(cur)) if k(cur[i]) == k(dup))
                p = self._move(p, "L", j, 1)
                s = p.concl
                p = Proof("contrL", Sequent(s.ante[1:], s.succ), [p])
            else:
                n = len(cur)
                p = self._move(p, "R", idx[1], n - 1)
                cur = list(p.concl.succ)
                j = max(i for i in range(n - 1) if k(cur[i]) == k(dup))
                p = self._move(p, "R", j, n - 2)
                s = p.concl
                p = Proof("contrR", Sequent(s.ante, s.succ[:-1]), [p])

    def _swap(self, p, side, i):
        s = p.concl
        seq = list(s.ante if side == "L" else s.succ)
        seq[i], seq[i + 1] = seq[i + 1], seq[i]
        concl = Sequent(seq, s.succ) if side == "L" else Sequent(s.ante, seq)
        return Proof("exchL" if side == "L" else "exchR", concl, [p], {"index": i})

    def _move(self, p, side, src, dst):
        while src > dst:
            p = self._swap(p, side, src - 1)
            src -= 1
        while src < dst:
            p = self._swap(p, side, src)
            src += 1
        return p

    def _sort(self, p, side, target):
        k = alpha_key
        slots: dict = {}
        for i, f in enumerate(target):
            slots.setdefault(k(f), []).append(i)
        cur = list(p.concl.ante if side == "L" else p.concl.succ)
        used: dict = {}
        pos = []
        for f in cur:
            j = used.get(k(f), 0)
            used[k(f)] = j + 1
            pos.append(slots[k(f)][j])
        n = len(pos)
        for a in range(n):
            for b in range(n - 1 - a):
                if pos[b] > pos[b + 1]:
                    pos[b], pos[b + 1] = pos[b + 1], pos[b]
                    p = self._swap(p, side, b)
        # use the target's representatives for the final conclusion
        s = p.concl
        if side == "L":
            p.concl = Sequent(target, s.succ)
        else:
            p.concl = Sequent(s.ante, target)
        return p

    # rules ---------------------------------------------------------------

    def export(self, d: INode) -> Proof:
        memo: dict = {}

        def go(n: INode) -> Proof:
            if id(n) in memo:
                return memo[id(n)][1]
            out = self._node(n, go)
            memo[id(n)] = (n, out)
            return out

        return go(d)

    def _node(self, n: INode, go) -> Proof:
        ante, succ = self.lists(n.concl)
        if n.rule == "ax":
            common = n.concl.ante & n.concl.succ
            if common:
                f = self.show(min(common, key=_order_key))
                leaf = Proof("init", Sequent([f], [f]))
            else:
                la = [self.show(f) for f in sorted(n.concl.ante, key=_order_key) if is_atomic(f)]
                ls = [self.show(f) for f in sorted(n.concl.succ, key=_order_key) if is_atomic(f)]
                leaf = Proof("eq", Sequent(la, ls))
            return self.reshape(leaf, ante, succ)
        if n.rule == "wk":
            return self.reshape(go(n.premises[0]), ante, succ)
        A = self.show(n.principal)
        sides = side_formulas(n.rule, n.principal, n.term, n.eigen)
        prem = []
        for q, (sa, ss) in zip(n.premises, sides):
            sa = [self.show(f) for f in sa]
            ss = [self.show(f) for f in ss]
            prem.append((go(q), sa, ss))
        r = n.rule
        if r == "cut":
            (p1, _, _), (p2, _, _) = prem
            p1 = self.reshape(p1, ante, succ + [A])
            p2 = self.reshape(p2, [A] + ante, succ)
            out = Proof("cut", Sequent(ante + ante, succ + succ), [p1, p2])
            return self.reshape(out, ante, succ)
        if r in ("andR", "orL", "iffL", "iffR"):
            (p1, a1, s1), (p2, a2, s2) = prem
            p1 = self.reshape(p1, a1 + ante, succ + s1)
            p2 = self.reshape(p2, a2 + ante, succ + s2)
            out = Proof(r, Sequent([A] + ante, succ) if r in LEFT else Sequent(ante, succ + [A]), [p1, p2])
            return self.reshape(out, ante, succ)
        if r == "impL":
            (p1, _, s1), (p2, a2, _) = prem
            p1 = self.reshape(p1, ante, succ + s1)
            p2 = self.reshape(p2, a2 + ante, succ)
            out = Proof("impL", Sequent([A] + ante + ante, succ + succ), [p1, p2])
            return self.reshape(out, ante, succ)
        ((p1, sa, ss),) = prem
        p1 = self.reshape(p1, sa + ante, succ + ss)
        if r == "andL":
            # B, C, Γ  ->  B∧C, C, Γ  ->  C, B∧C, Γ  ->  B∧C, B∧C, Γ
            s = p1.concl
            p1 = Proof("andL1", Sequent([A] + list(s.ante[1:]), s.succ), [p1])
            p1 = self._swap(p1, "L", 0)
            s = p1.concl
            out = Proof("andL2", Sequent([A] + list(s.ante[1:]), s.succ), [p1])
        elif r == "orR":
            s = p1.concl
            p1 = Proof("orR2", Sequent(s.ante, list(s.succ[:-1]) + [A]), [p1])
            p1 = self._swap(p1, "R", len(s.succ) - 2)
            s = p1.concl
            out = Proof("orR1", Sequent(s.ante, list(s.succ[:-1]) + [A]), [p1])
        elif r == "impR":
            out = Proof("impR", Sequent(ante, succ + [A]), [p1])
        elif r in LEFT:
            data = {"term": n.term} if r == "allL" else ({"eigen": n.eigen} if r == "exL" else {})
            out = Proof(r, Sequent([A] + ante, succ), [p1], data)
        else:
            data = {"term": n.term} if r == "exR" else ({"eigen": n.eigen} if r == "allR" else {})
            out = Proof(r, Sequent(ante, succ + [A]), [p1], data)
        return self.reshape(out, ante, succ)


def pretty_map(formulas) -> dict:
    from ..syntax.ast import subformulas

    out: dict = {}
    for f in formulas:
        for g in subformulas(f):
            out.setdefault(canon(g), g)
    return out


def reshape(proof: Proof, target: Sequent) -> Proof:
    """Contract, weaken and exchange proof's endsequent into exactly target."""
    p = Exporter().reshape(proof, list(target.ante), list(target.succ))
    p.concl = target
    return p


def export_proof(d: INode, endsequent: Sequent | None = None, extra=()) -> Proof:
    """Translate back to LK; with an endsequent, the root is reshaped to it exactly."""
    forms = list(endsequent.formulas()) if endsequent is not None else []
    ex = Exporter(pretty_map(forms + list(extra)))
    p = ex.export(d)
    if endsequent is not None:
        p = ex.reshape(p, list(endsequent.ante), list(endsequent.succ))
        p.concl = endsequent
    return p
