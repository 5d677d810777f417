"""One class sentence standing in for a re-axiomatized set theory.

Run from the repository root:  python3 demos/theta_prime.py
"""

from satrel.semantics import evaluate, hf_membership_structure
from satrel.syntax import C, S, free_vars, parse, print_expr
from satrel.theories import (
    ReAxiomatization,
    ShapeError,
    axiom,
    build_theta_prime,
    enumerating,
    instantiate_theta_phi,
    is_class_free,
    satisfaction_table_formula,
)
from satrel.util import deep_recursion


def show(title):
    print(f"\n== {title}")


v3 = hf_membership_structure(3)

with deep_recursion():
    show("θ′ for a D that enumerates Extensionality")
    tp = build_theta_prime(enumerating(axiom("Extensionality")))
    text = print_expr(tp)
    print(f"{len(text)} characters, closed: {not free_vars(tp)}, starts: {text[:60]}...")
    print("re-parses to the same sentence:", parse(text, C) == tp)

    show("replacing the class variable by a formula φ(v)")
    table = satisfaction_table_formula(v3, 2)
    # formula codes have rank at least 17, so none lies in stage(3) and the table is empty
    print("the satisfaction table of stage(3) as φ(v):", print_expr(table))
    for name, phi in [("table", table), ("v = v", parse("(= v v)", S)), ("v ≠ v", parse("(not (= v v))", S))]:
        th = instantiate_theta_phi(tp, phi)
        print(f"  φ = {name:<6} class-free: {is_class_free(th)}  true on stage(3): {evaluate(v3, th)}")

show("D must use bounded quantifiers only")
try:
    ReAxiomatization(axiom("Extensionality"))
except (ShapeError, ValueError) as exc:
    print("rejected:", exc)
