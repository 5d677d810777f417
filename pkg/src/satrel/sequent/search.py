"""Bounded backward proof search for LK⁻.

Root-first search in the set calculus: invertible propositional rules first,
then one eigenvariable per existential-left / universal-right formula, then
rounds of quantifier instantiation in which every universal-left and
existential-right formula is instantiated with every term of the branch.
``depth`` bounds the number of instantiation rounds.

A branch on which nothing is left to do is saturated; its atoms, read
modulo the equations on the left, give a term model in which everything
that ever stood on the left is true and everything on the right is false.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..syntax.ast import And, Apply, Atom, Equal, Exists, Forall, Iff, Implies, Neg, Or, Variable
from ..syntax.ops import all_var_names, fresh_var, free_vars, sort_of
from ..syntax.printer import to_sexpr
from ..semantics.structure import Assignment, Structure
from .core import Proof, Sequent, check_proof
from .eqlogic import build, is_atomic
from .internal import INode, ISeq, ax_valid, canon, export_proof, instance
from .subval import Subvaluation
from ..util import deep_recursion


@dataclass
class NotFoundWithinDepth:
    sequent: Sequent
    depth: int

    def __bool__(self):
        return False


@dataclass
class CounterInterpretation:
    sequent: Sequent
    structure: Structure
    assignment: Assignment
    subvaluation: Subvaluation

    def __bool__(self):
        return False


# ------------------------------------------------------------ branch state

_ORDER = {Neg: 0, And: 0, Or: 0, Implies: 0, Iff: 1}


def _key(f):
    return to_sexpr(f)


def _terms(f, out: set):
    """Subterms of f that contain no bound variable."""

    def term(t, bound):
        if free_vars(t) & bound:
            if isinstance(t, Apply):
                for a in t.args:
                    term(a, bound)
            return
        out.add(t)
        if isinstance(t, Apply):
            for a in t.args:
                term(a, bound)

    def form(g, bound):
        if isinstance(g, (Atom, Equal)):
            for a in (g.args if isinstance(g, Atom) else (g.left, g.right)):
                term(a, bound)
        elif isinstance(g, Neg):
            form(g.body, bound)
        elif isinstance(g, (And, Or, Implies, Iff)):
            form(g.left, bound)
            form(g.right, bound)
        elif isinstance(g, (Forall, Exists)):
            form(g.body, bound | {g.var})

    form(f, frozenset())


class _Open(Exception):
    def __init__(self, ante, succ, hist_g, hist_d):
        self.ante, self.succ, self.hist_g, self.hist_d = ante, succ, hist_g, hist_d


class _Depth(Exception):
    pass


class Searcher:
    def __init__(self, depth: int, build_proof: bool = True):
        self.depth = depth
        self.build_proof = build_proof
        self.memo: dict = {}

    def run(self, ante, succ):
        return self.search(frozenset(ante), frozenset(succ), frozenset(), frozenset(ante), frozenset(succ), self.depth)

    def search(self, G, D, used, hg, hd, rounds):
        if self.build_proof:
            return self._search(G, D, used, hg, hd, rounds)
        key = (G, D, used, rounds)
        if used or any(isinstance(f, (Forall, Exists)) for f in G | D):
            key += (hg, hd)  # the term universe depends on the history
        hit = self.memo.get(key)
        if hit is not None:
            if isinstance(hit, Exception):
                raise hit
            return hit
        try:
            out = self._search(G, D, used, hg, hd, rounds)
        except (_Open, _Depth) as exc:
            self.memo[key] = exc
            raise
        self.memo[key] = out
        return out

    def _node(self, rule, G, D, prems, principal, term=None, eigen=None):
        if not self.build_proof:
            return True
        return INode(rule, ISeq(G, D), prems, principal, term, eigen)

    def _search(self, G, D, used, hg, hd, rounds):
        if ax_valid(G, D):
            return self._node("ax", G, D, (), None)
        # invertible propositional rules, one-premise rules first
        best = None
        for side, pool in (("L", G), ("R", D)):
            for f in pool:
                if type(f) in _ORDER:
                    two = (side == "L" and isinstance(f, (Or, Implies))) or (side == "R" and isinstance(f, And))
                    rank = (_ORDER[type(f)] + (2 if two else 0), _key(f))
                    if best is None or rank < best[0]:
                        best = (rank, side, f)
        if best is not None:
            _, side, f = best
            return self._prop(side, f, G, D, used, hg, hd, rounds)
        # eigenvariable rules
        for side, pool, kind in (("L", G, Exists), ("R", D, Forall)):
            for f in sorted((g for g in pool if isinstance(g, kind)), key=_key):
                names = set()
                for g in hg | hd:
                    names |= all_var_names(g)
                a = fresh_var(names, f.var.sort, stem="a")
                inst = instance(f, a)
                if side == "L":
                    G2, D2 = (G - {f}) | {inst}, D
                    hg2, hd2 = hg | {inst}, hd
                else:
                    G2, D2 = G, (D - {f}) | {inst}
                    hg2, hd2 = hg, hd | {inst}
                sub = self.search(G2, D2, used, hg2, hd2, rounds)
                if sub is True or isinstance(sub, INode):
                    return self._node("exL" if side == "L" else "allR", G, D, [sub], f, eigen=a)
                return sub
        # instantiation round
        gammas = sorted([("L", f) for f in G if isinstance(f, Forall)] + [("R", f) for f in D if isinstance(f, Exists)],
                        key=lambda x: _key(x[1]))
        if not gammas:
            raise _Open(G, D, hg, hd)
        universe: set = set()
        for g in hg | hd:
            _terms(g, universe)
        pending = []
        for side, f in gammas:
            ts = sorted((t for t in universe if sort_of(t) == f.var.sort), key=_key)
            if not ts:
                names = set()
                for g in hg | hd:
                    names |= all_var_names(g)
                ts = [fresh_var(names, f.var.sort, stem="c")]
            for t in ts:
                if (f, t) not in used:
                    pending.append((side, f, t))
        if not pending:
            raise _Open(G, D, hg, hd)
        if rounds <= 0:
            raise _Depth()
        G2, D2, hg2, hd2 = set(G), set(D), set(hg), set(hd)
        steps = []
        for side, f, t in pending:
            inst = instance(f, t)
            steps.append((side, f, t, frozenset(G2), frozenset(D2)))
            if side == "L":
                G2.add(inst)
                hg2.add(inst)
            else:
                D2.add(inst)
                hd2.add(inst)
        used2 = used | {(f, t) for _, f, t in pending}
        sub = self.search(frozenset(G2), frozenset(D2), used2, frozenset(hg2), frozenset(hd2), rounds - 1)
        if sub is True:
            return True
        for side, f, t, g0, d0 in reversed(steps):
            sub = INode("allL" if side == "L" else "exR", ISeq(g0, d0), [sub], f, term=t)
        return sub

    def _prop(self, side, f, G, D, used, hg, hd, rounds):
        if side == "L":
            rest_g, rest_d = G - {f}, D
            rule = {Neg: "notL", And: "andL", Or: "orL", Implies: "impL", Iff: "iffL"}[type(f)]
            if isinstance(f, Neg):
                branches = [((), (f.body,))]
            elif isinstance(f, And):
                branches = [((f.left, f.right), ())]
            elif isinstance(f, Or):
                branches = [((f.left,), ()), ((f.right,), ())]
            elif isinstance(f, Implies):
                branches = [((), (f.left,)), ((f.right,), ())]
            else:
                branches = [((), (f.left, f.right)), ((f.left, f.right), ())]
        else:
            rest_g, rest_d = G, D - {f}
            rule = {Neg: "notR", And: "andR", Or: "orR", Implies: "impR", Iff: "iffR"}[type(f)]
            if isinstance(f, Neg):
                branches = [((f.body,), ())]
            elif isinstance(f, And):
                branches = [((), (f.left,)), ((), (f.right,))]
            elif isinstance(f, Or):
                branches = [((), (f.left, f.right))]
            elif isinstance(f, Implies):
                branches = [((f.left,), (f.right,))]
            else:
                branches = [((f.left,), (f.right,)), ((f.right,), (f.left,))]
        prems = []
        for sa, ss in branches:
            sub = self.search(rest_g | set(sa), rest_d | set(ss), used, hg | set(sa), hd | set(ss), rounds)
            prems.append(sub)
        return self._node(rule, G, D, prems, f)


# ------------------------------------------------------------ counter-models


def counter_interpretation(sequent: Sequent, exc: _Open) -> CounterInterpretation:
    hist_g, hist_d = exc.hist_g, exc.hist_d
    universe: set = set()
    for g in hist_g | hist_d:
        _terms(g, universe)
    for v in sequent.free_vars():
        universe.add(v)
    cc = build([f for f in exc.ante if is_atomic(f)])
    for t in universe:
        cc.add(t)
    cc.close()
    sorts = {sort_of(t) for t in universe} | {"set"}
    carriers: dict = {s: [] for s in sorts}
    cls: dict = {}
    for t in sorted(universe, key=lambda t: (len(to_sexpr(t)), to_sexpr(t))):
        r = cc.find(t)
        if r not in cls:
            cls[r] = to_sexpr(r)
            carriers[sort_of(t)].append(cls[r])
    for s in carriers:
        if not carriers[s]:
            carriers[s] = ["*"] if s == "set" else [f"*{s}"]
    elem = lambda t: cls[cc.find(t)]  # noqa: E731
    preds: dict = {}
    for f in exc.ante:
        if isinstance(f, Atom):
            preds.setdefault(f.pred, set()).add(tuple(elem(a) for a in f.args))
    ops: dict = {}
    for t in universe:
        if isinstance(t, Apply):
            ops.setdefault(t.op, {})[tuple(elem(a) for a in t.args)] = elem(t)
    default = carriers["set"][0]
    from itertools import product

    arities = {t.op: [sort_of(a) for a in t.args] for t in universe if isinstance(t, Apply)}
    for f in hist_g | hist_d:
        # predicates that never occur on the left are empty
        for p in _preds(f):
            preds.setdefault(p, set())
    for op, sorts_ in arities.items():
        table = ops[op]
        for args in product(*(carriers[s] for s in sorts_)):
            table.setdefault(args, default)
    st = Structure(carriers, preds, ops, name="counter-model", check=False)
    fv = set()
    for g in hist_g | hist_d:
        fv |= free_vars(g)
    assignment = Assignment({v: elem(v) for v in fv})
    V = Subvaluation(st)
    for f in hist_g:
        V.set(f, assignment, True)
    for f in hist_d:
        V.set(f, assignment, False)
    return CounterInterpretation(sequent, st, Assignment({v: assignment[v] for v in sequent.free_vars()}), V)


def _preds(f):
    out = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.pred)
        elif isinstance(g, Neg):
            stack.append(g.body)
        elif isinstance(g, (And, Or, Implies, Iff)):
            stack += [g.left, g.right]
        elif isinstance(g, (Forall, Exists)):
            stack.append(g.body)
    return out


# ------------------------------------------------------------ entry points


def _deepen(G, D, depth, build_proof):
    """Iterative deepening over the number of instantiation rounds."""
    for k in range(depth + 1):
        try:
            with deep_recursion():
                return Searcher(k, build_proof).run(G, D)
        except _Depth:
            continue
    raise _Depth()


def prove_lkminus(sequent: Sequent, depth: int = 3, check: bool = True):
    """Proof, CounterInterpretation or NotFoundWithinDepth."""
    G = frozenset(canon(f) for f in sequent.ante)
    D = frozenset(canon(f) for f in sequent.succ)
    try:
        d = _deepen(G, D, depth, True)
    except _Open as exc:
        return counter_interpretation(sequent, exc)
    except _Depth:
        return NotFoundWithinDepth(sequent, depth)
    proof = export_proof(d, sequent)
    if check:
        verdict = check_proof(proof, "LKminus")
        assert verdict, verdict.certificate
    return proof


def derivable(sequent: Sequent, depth: int = 3):
    """Decision mode: True, False (saturated) or None (depth exhausted)."""
    G = frozenset(canon(f) for f in sequent.ante)
    D = frozenset(canon(f) for f in sequent.succ)
    try:
        return _deepen(G, D, depth, False)
    except _Open:
        return False
    except _Depth:
        return None


__all__ = ["prove_lkminus", "derivable", "NotFoundWithinDepth", "CounterInterpretation", "Searcher"]
