"""Valuations, ⊨* and theories on small structures.

Run from the repository root:  python3 demos/satisfaction.py
"""

from satrel.encoding import encode, min_formula_rank, phi_class
from satrel.semantics import (
    agree_on_common_domain,
    build_valuation,
    failing_sentences,
    hf_membership_structure,
    is_partial_valuation,
    models_star,
)
from satrel.semantics.io import read_structure
from satrel.syntax import S, parse
from satrel.theories import axiom, theory_library


def show(title):
    print(f"\n== {title}")


v2, v3 = hf_membership_structure(2), hf_membership_structure(3)

show("a valuation is a table of truth values obeying the clauses")
a = parse("(exists u (in u v))", S)
b = parse("(forall u (not (in u v)))", S)
c = parse("(iff (in u v) (in v u))", S)
F = build_valuation(v3, [a, b])
G = build_valuation(v3, [b, c])
print("entries:", len(F), "and", len(G), " partial valuation:", bool(is_partial_valuation(v3, F)))
print("shared entries:", len(F.table.keys() & G.table.keys()), " agree:", agree_on_common_domain(F, G))

show("⊨* on the stages")
for name in ("Extensionality", "Foundation", "Union", "Pair", "Power"):
    row = "  ".join(f"V{n}:{'T' if models_star(hf_membership_structure(n), axiom(name)) else 'F'}" for n in (1, 2, 3, 4))
    print(f"{name:<15}{row}")

show("a set containing itself is extensional but not well-founded; a two-cycle passes both")
loop = read_structure("(structure (carrier a) (pred in (a a)))")
cycle = read_structure("(structure (carrier a b) (pred in (a b) (b a)))")
for name in ("Extensionality", "Foundation"):
    print(f"{name:<15} loop:{models_star(loop, axiom(name))}  two-cycle:{models_star(cycle, axiom(name))}")

show("which ZF sentences fail on V3")
zf = theory_library()["ZF"]
failing = failing_sentences(v3, zf)
explicit = [lab for lab in failing if "#" not in lab]
print(len(zf.sentences()), "sentences checked;", len(failing), "fail")
print("  axioms:", ", ".join(explicit), " schema instances:", len(failing) - len(explicit), "e.g.", failing[len(explicit)])

show("formula codes are large sets")
print("cheapest s-formula code has rank", min_formula_rank(S), "so Φ_4 holds", len(phi_class(4, S)), "formulas")
print("rank of the code of Extensionality:", encode(axiom("Extensionality")).rank)
