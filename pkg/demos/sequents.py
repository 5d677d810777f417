"""Checking, cutting and searching for sequent proofs.

Run from the repository root:  python3 demos/sequents.py
"""

from pathlib import Path

from satrel.sequent import (
    CounterInterpretation,
    check_proof,
    eliminate_cuts,
    eval_sequent,
    prove_lkminus,
    read_proof_file,
    subformula_property,
)
from satrel.sequent.io import read_sequent_file
from satrel.syntax import print_expr

DATA = Path(__file__).parent / "data"


def show(title):
    print(f"\n== {title}")


show("a proof of excluded middle that goes through a cut")
proof, sig, _ = read_proof_file((DATA / "lem.proof").read_text())
print("endsequent:", proof.concl)
print("nodes:", proof.size(), " cuts:", sum(n.rule == "cut" for n in proof.nodes()))
print("valid in LK: ", bool(check_proof(proof, "LK")))
verdict = check_proof(proof, "LKminus")
print("valid in LK⁻:", bool(verdict), " ->", verdict.certificate)

show("cut elimination")
free = eliminate_cuts(proof)
print("nodes:", free.size(), " same endsequent:", free.concl == proof.concl)
print("valid in LK⁻:", bool(check_proof(free, "LKminus")), " subformula property:", subformula_property(free))

show("a corrupted inference is located")
text = (DATA / "lem.proof").read_text().replace("exchR", "contrR", 1)
bad, _, _ = read_proof_file(text)
print(check_proof(bad, "LK").certificate)

show("search: a proof or a counter-interpretation")
for name in ("exists.seq", "p.seq"):
    sq, _, _ = read_sequent_file((DATA / name).read_text())
    r = prove_lkminus(sq, 3)
    if isinstance(r, CounterInterpretation):
        st = r.structure
        print(f"{sq}: not derivable")
        print("  carrier:", list(st.carrier()), " true atoms:", sorted(p for p, t in st.pred_tuples.items() if t))
        print("  the sequent fails there:", not eval_sequent(st, sq, r.assignment))
    else:
        print(f"{sq}: derivable, {r.size()} nodes, checks:", bool(check_proof(r, "LKminus")))
        print("  last rule:", r.rule, " principal:", print_expr(sq.succ[0]))
