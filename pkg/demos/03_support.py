"""The support relation in its three decidable fragments."""

from seqbes import ST_BASE, support_atomic, support_oracle, support_refute, parse_judgment, valid
from seqbes.bases import HS, ST, axiom, extend, make_base
from seqbes.simulation import atomic_mapping, simulation_base
from seqbes.syntax import And, Atom, Sequent, parse_formula

p, q, r = Atom("p"), Atom("q"), Atom("r")

# Atomic judgments: exact on cut-closed bases.
chain = [axiom("p => q"), axiom("q => r")]
print("p |= r over the cut-closed chain:", support_atomic(make_base(chain, ST), {p}, {r}).status)
v = support_atomic(make_base(chain, HS), {p}, {r})
print("p |= r over the cut-free chain:  ", v.status)
print(v.describe())

# Formula judgments over a simulation base.
qr = And(q, r)
m = atomic_mapping([qr])
for closure in (ST, HS):
    base = extend(simulation_base([qr], m, "full", closure), [axiom(Sequent.of([], [m(qr)]))])
    print(f"\n|= q & r with => p^(q & r) asserted, {closure} closure:", support_oracle(base, [], [qr]).status)

# Refutation searches small extensions; it never claims support.
print("\nrefuting |= p in the empty base:", support_refute(ST_BASE, parse_judgment("|= p"), 1).status)
print("refuting |= p -> p:", support_refute(ST_BASE, parse_judgment("|= p -> p"), 2).status)

# Validity coincides with classical provability.
print("\nq & r |= q valid:", valid([qr], [q]).valid)
print("|= p | ~p valid:", valid([], [parse_formula("p | ~p")], "cut-free").valid)
