"""Atomic bases, saturation, and what atomic cut adds.

A base is a finite set of atomic rules. Derivability closes the rules under
side contexts; saturation computes the minimal derivable sequents.
"""

from seqbes import HS, ST, axiom, derivation, make_base, saturate, render
from seqbes.syntax import Atom

chain = [axiom("p => q"), axiom("q => r")]
atoms = [Atom(x) for x in "pqr"]

for closure in (HS, ST):
    base = make_base(chain, closure)
    minimal = saturate(base, atoms).minimal
    print(f"{closure}: minimal derivable sequents:", ", ".join(render(s) for s in minimal))

print("\nwith atomic cut, p => r is derived like this:")
print(derivation(make_base(chain, ST), "p => r").to_text(1))

# Side contexts are free: the same derivation weakens to any context.
print("\nand in context:")
print(derivation(make_base(chain, ST), "s, p => r, t").to_text(1))
