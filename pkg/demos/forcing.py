"""Forcing over finite posets: three relations that agree.

Run from the repository root:  python3 demos/forcing.py
"""

from pathlib import Path

from satrel.forcing import Forcing, generic_filters, posets_up_to_iso, value_of
from satrel.forcing.grid import GridReport, check_poset, formula_corpus
from satrel.forcing.io import read_names, read_poset
from satrel.hf import to_literal
from satrel.syntax import S, Variable, parse, print_expr

DATA = Path(__file__).parent / "data"


def show(title):
    print(f"\n== {title}")


P = read_poset((DATA / "antichain.poset").read_text())
names = read_names((DATA / "antichain.names").read_text(), P)
x, y = names["x"], names["y"]

show("the poset and its generic filters")
print("elements:", P.elements, " minimal:", P.minimal)
for G in generic_filters(P):
    print(f"  G = {sorted(G)}:  x^G = {to_literal(value_of(x, G))}  y^G = {to_literal(value_of(y, G))}")

show("who forces what")
F = Forcing(P, tuple(dict.fromkeys(Forcing(P).pool + tuple(x.constituents() | y.constituents()))))
env = {Variable("x"): x, Variable("y"): y}
for text in ["(exists e (and (forall w (not (in w e))) (in e x)))", "(in x y)", "(= x y)"]:
    f = parse(text, S)
    row = []
    for p in P.elements:
        a, b, c = F.forces_semantic(p, f, env), F.forces_recursive(p, f, env), F.forces_star(p, f, env)
        assert a == b == c
        row.append(f"{p}:{'⊩' if a else '.'}")
    print(f"{print_expr(f):<55} {'  '.join(row)}  value {sorted(F.boolean_value(f, env))}")

show("a sweep over every poset with at most three elements")
report = GridReport()
for Q in posets_up_to_iso(3):
    check_poset(Q, formula_corpus(), report)
print(f"{report.posets} posets, {report.cells} cells, all properties hold: {report.ok}")
print("the four-element sweep runs in tests/test_acceptance.py")
