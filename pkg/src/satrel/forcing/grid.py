"""The exhaustive desk grid: posets up to isomorphism, a name pool, a formula corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..syntax import S, parse
from ..syntax.ast import Neg
from ..syntax.ops import free_vars
from .poset import posets_up_to_iso
from .relation import Forcing

CORPUS_TEXT = [
    "(in x y)",
    "(= x y)",
    "(not (in x y))",
    "(not (= x y))",
    "(in x x)",
    "(or (in x y) (not (in x y)))",
    "(and (in x y) (in y x))",
    "(implies (in x y) (= x y))",
    "(iff (in x y) (in y x))",
    "(exists u (in u x))",
    "(forall u (not (in u x)))",
    "(exists u (and (in u x) (in u y)))",
    "(forall u (implies (in u x) (in u y)))",
    "(forall u (iff (in u x) (in u y)))",
    "(exists u (and (in u y) (forall w (not (in w u)))))",
    "(exists u (and (in x u) (in u y)))",
    "(forall u (implies (in u x) (exists w (in w u))))",
    "(exists u (forall w (iff (in w u) (or (= w x) (= w y)))))",
    "(forall u (forall w (implies (and (in u x) (in w x)) (= u w))))",
    "(exists u (= u x))",
    "(forall u (exists w (in u w)))",
    "(exists u (and (in u x) (not (in u y))))",
    "(or (in x y) (= x y))",
    "(not (exists u (in u x)))",
    "(implies (exists u (in u x)) (exists u (in u y)))",
    "(forall u (or (in u x) (not (in u x))))",
    "(exists u (exists w (and (in u x) (in w u))))",
    "(iff (= x y) (forall u (iff (in u x) (in u y))))",
    "(forall u (implies (in u y) (exists w (and (in w y) (in u w)))))",
    "(exists u (and (in u x) (forall w (implies (in w u) (in w y)))))",
]


def formula_corpus() -> list:
    return [parse(t, S) for t in CORPUS_TEXT]


def assignments(f, pool):
    fv = sorted(free_vars(f), key=lambda v: v.name)
    for xs in product(pool, repeat=len(fv)):
        yield dict(zip(fv, xs))


@dataclass
class GridReport:
    posets: int = 0
    cells: int = 0  # (poset, formula, assignment, condition) checks
    disagreements: list = field(default_factory=list)
    truth_lemma_failures: list = field(default_factory=list)
    complement_failures: list = field(default_factory=list)
    persistence_failures: list = field(default_factory=list)
    undecided_at_minimal: list = field(default_factory=list)
    missing_relations: int = 0

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.truth_lemma_failures or self.complement_failures
                    or self.persistence_failures or self.undecided_at_minimal or self.missing_relations)


def check_poset(P, formulas, report: GridReport, rank_bound: int = 2):
    F = Forcing(P, rank_bound=rank_bound)
    report.posets += 1
    for f in formulas:
        neg = Neg(f)
        if F.relation(f) is None or F.relation(neg) is None:
            report.missing_relations += 1
            continue
        for names in assignments(f, F.pool):
            rec = {}
            for p in P.elements:
                report.cells += 1
                a = F.forces_semantic(p, f, names)
                b = F.forces_recursive(p, f, names)
                c = F.forces_star(p, f, names)
                rec[p] = b
                if not a == b == c:
                    report.disagreements.append((P, p, f, names, (a, b, c)))
            for G in F.filters:
                if F.truth(G, f, names) != any(rec[p] for p in G):
                    report.truth_lemma_failures.append((P, G, f, names))
            for p in P.elements:
                if rec[p] and not all(rec[q] for q in P.below(p)):
                    report.persistence_failures.append((P, p, f, names))
            for m in P.minimal:
                if not (rec[m] or F.forces_recursive(m, neg, names)):
                    report.undecided_at_minimal.append((P, m, f, names))
            value = F.boolean_value(f, names)
            if F.boolean_value(neg, names) != frozenset(P.minimal) - value:
                report.complement_failures.append((P, f, names))


def run_grid(max_size: int = 4, rank_bound: int = 2, formulas=None) -> GridReport:
    formulas = formulas if formulas is not None else formula_corpus()
    report = GridReport()
    for P in posets_up_to_iso(max_size):
        check_poset(P, formulas, report, rank_bound)
    return report


__all__ = ["CORPUS_TEXT", "GridReport", "assignments", "check_poset", "formula_corpus", "run_grid"]
