"""A deliberately naive derivability enumerator, for cross-checking saturation.

It works over a small fixed universe and applies the rule-with-contexts
definition literally: every sequent over the universe is a candidate, every
pair of side contexts is tried for every premise, and the loop runs until
nothing new appears. No subsumption or canonical firing is used, so it
shares no reasoning with :func:`seqbes.bases.saturate`.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .bases import ST, Base
from .syntax import Atom, Sequent, ordered


def _subsets(n: int) -> range:
    return range(1 << n)


def brute_force_derivable(base: Base, universe: Iterable[Atom]) -> frozenset:
    """All sequents over ``universe`` derivable in ``base`` (ground rules plus
    identity, and atomic cut when the base is cut-closed)."""
    atoms = ordered(frozenset(universe) | base.atoms())
    idx = {a: i for i, a in enumerate(atoms)}
    n = len(atoms)

    def enc(s: Sequent):
        return (sum(1 << idx[a] for a in s.left), sum(1 << idx[a] for a in s.right))

    rules = [([enc(p) for p in g.premises], enc(g.conclusion)) for g in base.ground]
    for i in range(n):
        rules.append(([], (1 << i, 1 << i)))
        if base.closure == ST:
            rules.append(([(0, 1 << i), (1 << i, 0)], (0, 0)))

    contexts = [(t, s) for t in _subsets(n) for s in _subsets(n)]
    derived = set()
    changed = True
    while changed:
        changed = False
        for prems, (cl, cr) in rules:
            # for each premise, the contexts that make it a derived sequent
            options = []
            for pl, pr in prems:
                options.append([(t, s) for t, s in contexts if (t | pl, s | pr) in derived])
            for combo in itertools.product(*options):
                # an axiom is combo == () and ranges over its own contexts
                if not prems:
                    new = [(cl | t, cr | s) for t, s in contexts]
                else:
                    lt, ls = 0, 0
                    for t, s in combo:
                        lt |= t
                        ls |= s
                    new = [(cl | lt, cr | ls)]
                for seq in new:
                    if seq not in derived:
                        derived.add(seq)
                        changed = True

    def dec(m):
        return frozenset(a for i, a in enumerate(atoms) if m >> i & 1)

    return frozenset(Sequent(dec(l), dec(r)) for l, r in derived)


def all_sequents(universe: Iterable[Atom]) -> list:
    atoms = ordered(frozenset(universe))
    out = []
    for l in _subsets(len(atoms)):
        for r in _subsets(len(atoms)):
            out.append(
                Sequent(
                    frozenset(a for i, a in enumerate(atoms) if l >> i & 1),
                    frozenset(a for i, a in enumerate(atoms) if r >> i & 1),
                )
            )
    return out
