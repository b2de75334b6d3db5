"""Deciding classical sequents and checking proofs.

Run with ``python demos/01_prover_and_checker.py``.
"""

from seqbes import Rule, check_proof, parse_formula, parse_sequent, prove, render
from seqbes.clp import Proof, ProofError

# A valid sequent comes back with a cut-free proof.
peirce = parse_sequent("=> ((p -> q) -> p) -> p")
result = prove(peirce)
print("Peirce's law:")
print(result.proof.to_text(1))
check_proof(result.proof)

# An invalid one comes back with a falsifying valuation.
result = prove(parse_sequent("p -> q => q -> p"))
print("\nconverse of an implication is refuted by", {str(k): v for k, v in result.valuation.items()})

# The checker rejects a malformed step and says where.
bad = Proof(
    parse_sequent("=> p -> q"),
    Rule.R_IMP,
    (Proof(parse_sequent("q, p => q"), Rule.INIT, (), parse_formula("q")),),
    parse_formula("p -> q"),
)
try:
    check_proof(bad)
except ProofError as e:
    print("\nrejected:", e)

# Proofs export to JSON and to bussproofs markup.
print()
print(render(prove(parse_sequent("q & r => q")).proof, "latex"))
