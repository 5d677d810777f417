"""Theories as finite lists of sentences plus schema generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .ast import (
    And,
    Atom,
    Equal,
    Formula,
    Iff,
    Implies,
    Neg,
    Or,
    Variable,
    Exists,
    Forall,
)
from .ops import free_vars, instantiate_collection, instantiate_comprehension, is_closed


@dataclass(frozen=True)
class SchemaGenerator:
    """A schema with one formula slot, e.g. Comprehension."""

    kind: str  # "comprehension" | "collection"
    # variables the slot formula may use freely
    slot_vars: tuple = ()
    # optional fixed slot formula; None means "all formulas up to the bound"
    formula: Formula | None = None

    def instantiate(self, psi: Formula) -> Formula:
        if self.kind == "comprehension":
            return instantiate_comprehension(psi)
        if self.kind == "collection":
            return instantiate_collection(psi)
        raise ValueError(f"unknown schema {self.kind}")

    def instances(self, max_connectives: int = 1, preds=("in",)) -> list:
        if self.formula is not None:
            return [self.instantiate(self.formula)]
        vs = self.slot_vars or (
            (Variable("z"), Variable("y"))
            if self.kind == "comprehension"
            else (Variable("z"), Variable("beta"), Variable("y"))
        )
        out = []
        for psi in enumerate_formulas(vs, max_connectives, preds=preds, quantifiers=False):
            out.append(self.instantiate(psi))
        return out


@dataclass
class Theory:
    name: str
    explicit: list = field(default_factory=list)
    generators: list = field(default_factory=list)
    labels: list = field(default_factory=list)
    infinity: bool = False

    def __post_init__(self):
        for s in self.explicit:
            if not is_closed(s):
                raise ValueError(f"theory {self.name}: {s} is not a sentence")
        if len(self.labels) < len(self.explicit):
            self.labels = list(self.labels) + [f"#{k}" for k in range(len(self.labels), len(self.explicit))]

    def sentences(self, max_connectives: int = 1) -> list:
        out = list(self.explicit)
        for g in self.generators:
            out.extend(g.instances(max_connectives))
        return out

    def items(self):
        return list(zip(self.labels, self.explicit))


def atoms_over(vs, preds=("in",), equality=True) -> list:
    out = []
    for a, b in product(vs, repeat=2):
        if equality:
            out.append(Equal(a, b))
        for p in preds:
            out.append(Atom(p, (a, b)))
    return out


def enumerate_formulas(vs, max_connectives: int, preds=("in",), quantifiers=True,
                       equality=True, atoms=None) -> list:
    """All formulas over the variables ``vs`` with at most ``max_connectives``
    connectives/quantifiers (quantifiers bind members of ``vs``)."""
    base = list(atoms) if atoms is not None else atoms_over(vs, preds, equality)
    by_size: list = [base]
    for n in range(1, max_connectives + 1):
        layer = [Neg(f) for f in by_size[n - 1]]
        if quantifiers:
            for f in by_size[n - 1]:
                for v in vs:
                    layer.append(Exists(v, f))
                    layer.append(Forall(v, f))
        for k in range(n):
            for f in by_size[k]:
                for g in by_size[n - 1 - k]:
                    for c in (And, Or, Implies, Iff):
                        layer.append(c(f, g))
        by_size.append(layer)
    return [f for layer in by_size for f in layer]


__all__ = ["Theory", "SchemaGenerator", "enumerate_formulas", "atoms_over", "free_vars"]
