"""Finite structures and assignments."""

from __future__ import annotations

from collections.abc import Mapping
from itertools import product

from ..hf import HfSet, adjoin, empty, stage
from ..syntax.ast import SET
from ..syntax.signature import S, S_PRIME, Signature


class UnassignedVariable(KeyError):
    pass


class NotASubstructure(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


class Assignment(Mapping):
    """Immutable finite map from variables to elements."""

    __slots__ = ("_d", "_key")

    def __init__(self, items=()):
        d = dict(items)
        object.__setattr__(self, "_d", d)
        object.__setattr__(
            self, "_key", frozenset(d.items())
        )

    def __getitem__(self, v):
        return self._d[v]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        if isinstance(other, Assignment):
            return self._key == other._key
        if isinstance(other, Mapping):
            return self._d == dict(other)
        return NotImplemented

    def __setattr__(self, k, v):
        raise AttributeError("assignments are immutable")

    def restrict(self, vs) -> "Assignment":
        return Assignment((v, self._d[v]) for v in vs if v in self._d)

    def extend(self, v, value) -> "Assignment":
        d = dict(self._d)
        d[v] = value
        return Assignment(d)

    def sorted_items(self):
        return sorted(self._d.items(), key=lambda kv: (kv[0].name, kv[0].sort))

    def __repr__(self):
        inner = ", ".join(f"{v.name}↦{val}" for v, val in self.sorted_items())
        return "{" + inner + "}"


EMPTY_ASSIGNMENT = Assignment()


def _as_pred(ext):
    if callable(ext):
        return ext, None
    tuples = frozenset(tuple(t) for t in ext)
    return (lambda *args: args in tuples), tuples


class Structure:
    """A structure with finite carriers (one per sort).

    ``predicates`` maps a name to either an iterable of tuples or a Python
    callable; ``operations`` maps a name to a dict ``args -> value`` or a
    callable.  ``solvers`` optionally map a predicate name to a function
    ``(position, args) -> iterable | None`` listing the values at ``position``
    that can make the atom true given the other arguments (``None`` at the
    unknown position); returning None means "no help, enumerate".
    """

    def __init__(self, carriers: dict, predicates=None, operations=None, sig: Signature | None = None,
                 solvers=None, name: str = "", check: bool = True):
        self.name = name
        self.carriers = {s: tuple(c) for s, c in carriers.items()}
        self._carrier_sets = {s: frozenset(c) for s, c in self.carriers.items()}
        self.sig = sig
        self.pred_fns = {}
        self.pred_tuples = {}
        for p, ext in (predicates or {}).items():
            fn, tuples = _as_pred(ext)
            self.pred_fns[p] = fn
            if tuples is not None:
                self.pred_tuples[p] = tuples
        self.op_fns = {}
        self.op_tables = {}
        for o, tab in (operations or {}).items():
            if callable(tab):
                self.op_fns[o] = tab
            else:
                tab = {tuple(k) if isinstance(k, tuple) else (k,): v for k, v in tab.items()}
                self.op_tables[o] = tab
                self.op_fns[o] = lambda *args, _t=tab: _t[args]
        self.solvers = dict(solvers or {})
        for p, tuples in self.pred_tuples.items():
            self.solvers.setdefault(p, _tuple_solver(tuples))
        if check:
            self.validate()

    def carrier(self, sort: str = SET):
        return self.carriers[sort]

    def in_carrier(self, x, sort: str = SET) -> bool:
        return x in self._carrier_sets[sort]

    def holds(self, pred: str, args) -> bool:
        try:
            fn = self.pred_fns[pred]
        except KeyError:
            raise KeyError(f"structure {self.name!r} does not interpret predicate {pred!r}") from None
        return bool(fn(*args))

    def apply(self, op: str, args):
        try:
            fn = self.op_fns[op]
        except KeyError:
            raise KeyError(f"structure {self.name!r} does not interpret operation {op!r}") from None
        return fn(*args)

    def size(self) -> int:
        return sum(len(c) for c in self.carriers.values())

    def validate(self):
        for s, c in self.carriers.items():
            if not c:
                raise ValueError(f"carrier for sort {s} is empty")
        if self.sig is None:
            return
        for s in self.sig.sorts:
            if s not in self.carriers:
                raise ValueError(f"no carrier for sort {s}")
        for p, arg_sorts in self.sig.predicates:
            if p not in self.pred_fns:
                raise ValueError(f"predicate {p} not interpreted")
            for t in self.pred_tuples.get(p, ()):
                if len(t) != len(arg_sorts) or not all(
                    self.in_carrier(x, s) for x, s in zip(t, arg_sorts)
                ):
                    raise ValueError(f"tuple {t} of {p} is not sort-correct")
        for o, arg_sorts, res in self.sig.operations:
            if o not in self.op_fns:
                raise ValueError(f"operation {o} not interpreted")
            # operations must be total and closed on the carrier
            for args in product(*(self.carriers[s] for s in arg_sorts)):
                try:
                    val = self.op_fns[o](*args)
                except KeyError:
                    raise ValueError(f"operation {o} undefined at {args}") from None
                if not self.in_carrier(val, res):
                    raise ValueError(f"operation {o} leaves the carrier at {args}")

    def __repr__(self):
        sizes = ", ".join(f"{s}:{len(c)}" for s, c in self.carriers.items())
        return f"Structure({self.name or '?'}; {sizes})"


def _tuple_solver(tuples):
    index: dict = {}
    for t in tuples:
        for i in range(len(t)):
            key = (i, t[:i] + (None,) + t[i + 1 :])
            index.setdefault(key, []).append(t[i])

    def solve(pos, args):
        return index.get((pos, tuple(args)), ())

    return solve


# ------------------------------------------------------------ HF structures


def _member_solver(pos, args):
    if pos == 0 and isinstance(args[1], HfSet):
        return args[1].children
    return None


def hf_membership_structure(n: int, name: str | None = None) -> Structure:
    """(stage(n); ∈)."""
    carrier = stage(n)
    return Structure(
        {SET: carrier},
        {"in": lambda a, b: a in b},
        sig=S,
        solvers={"in": _member_solver},
        name=name or f"V{n}",
    )


def membership_structure(elements, name: str = "", extra_predicates=None, sig=None) -> Structure:
    """(X; ∈) for a finite set X of HF sets (true membership)."""
    preds = {"in": lambda a, b: a in b}
    preds.update(extra_predicates or {})
    return Structure(
        {SET: tuple(sorted(set(elements)))},
        preds,
        sig=sig,
        solvers={"in": _member_solver},
        name=name,
    )


class _HFCarrier(tuple):
    """Marker for the (infinite) class HF: membership test only."""

    def __contains__(self, x):
        return isinstance(x, HfSet)


def standard_hf_structure() -> Structure:
    """HF with ∈, 0 and ↶.  The carrier is infinite, so only term evaluation
    and guarded quantification are supported."""
    st = Structure(
        {SET: ()},
        {"in": lambda a, b: a in b},
        {"empty": lambda: empty(), "adjoin": lambda a, b: adjoin(a, b)},
        sig=None,
        solvers={"in": _member_solver},
        name="HF",
        check=False,
    )
    st._carrier_sets = {SET: _HFCarrier()}
    st.infinite = True
    return st


def is_substructure(sub: Structure, sup: Structure) -> bool:
    try:
        check_substructure(sub, sup)
    except NotASubstructure:
        return False
    return True


def check_substructure(sub: Structure, sup: Structure):
    for s, c in sub.carriers.items():
        if s not in sup.carriers or not all(sup.in_carrier(x, s) for x in c):
            raise NotASubstructure(f"carrier of sort {s} is not contained in the larger structure")
    sig = sub.sig or sup.sig
    preds = sig.predicates if sig else [(p, None) for p in sub.pred_fns]
    for p, arg_sorts in preds:
        if arg_sorts is None:
            continue
        for args in product(*(sub.carriers[s] for s in arg_sorts)):
            if sub.holds(p, args) != sup.holds(p, args):
                raise NotASubstructure(f"predicate {p} differs at {args}")
    if sig:
        for o, arg_sorts, _ in sig.operations:
            for args in product(*(sub.carriers[s] for s in arg_sorts)):
                if sub.apply(o, args) != sup.apply(o, args):
                    raise NotASubstructure(f"operation {o} differs at {args}")


def all_assignments(st: Structure, variables):
    vs = sorted(variables, key=lambda v: (v.name, v.sort))
    for vals in product(*(st.carrier(v.sort) for v in vs)):
        yield Assignment(zip(vs, vals))


def assignment_count(st: Structure, variables) -> int:
    n = 1
    for v in variables:
        n *= len(st.carrier(v.sort))
    return n


__all__ = [
    "Assignment",
    "EMPTY_ASSIGNMENT",
    "Structure",
    "UnassignedVariable",
    "NotASubstructure",
    "ResourceLimit",
    "hf_membership_structure",
    "membership_structure",
    "standard_hf_structure",
    "is_substructure",
    "check_substructure",
    "all_assignments",
    "assignment_count",
    "S_PRIME",
]
