from __future__ import annotations

from dataclasses import dataclass, field

from .ast import CLASS, SET


class SortError(TypeError):
    """Raised when a symbol is used with the wrong sorts or arity."""


@dataclass(frozen=True)
class Signature:
    name: str
    sorts: tuple = (SET,)
    predicates: tuple = ()  # (name, (arg sorts...))
    operations: tuple = ()  # (name, (arg sorts...), result sort)
    _pred_map: dict = field(default=None, compare=False, hash=False, repr=False)
    _op_map: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        pm = {}
        for p, args in self.predicates:
            if p in pm:
                raise SortError(f"duplicate predicate {p}")
            pm[p] = tuple(args)
        om = {}
        for o, args, res in self.operations:
            if o in om:
                raise SortError(f"duplicate operation {o}")
            om[o] = (tuple(args), res)
        for s in [*(a for a in pm.values() for a in a), *(r for _, r in om.values())]:
            if s not in self.sorts:
                raise SortError(f"unknown sort {s}")
        object.__setattr__(self, "_pred_map", pm)
        object.__setattr__(self, "_op_map", om)

    def predicate(self, name: str):
        try:
            return self._pred_map[name]
        except KeyError:
            raise SortError(f"unknown predicate symbol {name!r} in signature {self.name}") from None

    def operation(self, name: str):
        try:
            return self._op_map[name]
        except KeyError:
            raise SortError(f"unknown operation symbol {name!r} in signature {self.name}") from None

    def has_predicate(self, name: str) -> bool:
        return name in self._pred_map

    def has_operation(self, name: str) -> bool:
        return name in self._op_map

    def extend(self, name: str, sorts=(), predicates=(), operations=()) -> "Signature":
        return Signature(
            name,
            self.sorts + tuple(s for s in sorts if s not in self.sorts),
            self.predicates + tuple(predicates),
            self.operations + tuple(operations),
        )

    def without(self, name: str, predicates=(), operations=()) -> "Signature":
        return Signature(
            name,
            self.sorts,
            tuple(p for p in self.predicates if p[0] not in predicates),
            tuple(o for o in self.operations if o[0] not in operations),
        )


MEMBER = ("in", (SET, SET))
CLASS_MEMBER = ("class-in", (SET, CLASS))
EMPTY = ("empty", (), SET)
ADJOIN = ("adjoin", (SET, SET), SET)

# identity is logical and lives in every signature as the Equal node
S = Signature("s", (SET,), (MEMBER,))
C = Signature("c", (SET, CLASS), (MEMBER, CLASS_MEMBER))
S_PRIME = S.extend("s'", operations=(EMPTY, ADJOIN))
C_PRIME = C.extend("c'", operations=(EMPTY, ADJOIN))
S_V = S.extend("s^V", predicates=(("V", (SET,)),))
S_STAR = S.extend(
    "s*", predicates=(("V", (SET,)),), operations=(("P", (), SET), ("G", (), SET))
)
C_STAR = C.extend(
    "c*", predicates=(("V", (SET,)),), operations=(("P", (), SET), ("G", (), SET))
)


def propositional(atoms=("p", "q", "r"), base: Signature = S) -> Signature:
    """base plus nullary predicates, for propositional sequents."""
    return base.extend(base.name + "+prop", predicates=tuple((a, ()) for a in atoms))


BUILTIN = {sig.name: sig for sig in (S, C, S_PRIME, C_PRIME, S_V, S_STAR, C_STAR)}
