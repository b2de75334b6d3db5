"""The support relation ``Γ ⊩_B Δ`` and semantic validity.

Support quantifies over every extension of the base, so it is not decidable
in general. Three fragments are answered honestly:

* :func:`support_atomic` for atomic judgments (exact whenever the base is
  cut-closed or there are no hypotheses; one-sided otherwise),
* :func:`support_oracle` for formula judgments over a simulation base,
* :func:`support_refute`, a bounded search for a counter-extension.

Anything outside these fragments yields :class:`Unknown`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .bases import (
    ST,
    Base,
    BaseError,
    axiom,
    derivable,
    derivation,
    extend,
    saturate,
)
from .clp import Provable, prove
from .simulation import FULL, QUASI, ScopeError
from .syntax import (
    And,
    Atom,
    Bottom,
    Formula,
    Or,
    Sequent,
    ordered,
    parse_sequent,
    render,
    render_list,
)

# ---------------------------------------------------------------------------
# Judgments and verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Judgment:
    antecedents: frozenset
    succedents: frozenset
    base: Optional[Base] = None

    @classmethod
    def of(cls, antecedents: Iterable[Formula] = (), succedents: Iterable[Formula] = (), base=None) -> "Judgment":
        return cls(frozenset(antecedents), frozenset(succedents), base)

    @property
    def is_atomic(self) -> bool:
        return all(isinstance(a, Atom) for a in self.antecedents | self.succedents)

    def to_text(self) -> str:
        left = render_list(self.antecedents)
        return f"{left} |= {render_list(self.succedents)}".strip()

    def __str__(self):
        return self.to_text()


def parse_judgment(text: str, base: Optional[Base] = None, allow_mapped: bool = True) -> Judgment:
    """Parse ``"Γ |= Δ"``."""
    s = parse_sequent(text, allow_mapped=allow_mapped, arrow="|=")
    return Judgment(s.left, s.right, base)


@dataclass(frozen=True)
class Supported:
    witness: object  # a Derivation, or a tuple of them, or a short justification

    status = "supported"

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotSupported:
    """``base`` is an extension ``C`` of the queried base where the obligation
    ``hypotheses ⊩ query`` breaks: every ``=> contexts[h], h`` is derivable
    in ``C`` but ``=> (⋃ contexts) ∪ query`` is not."""

    base: Base
    query: Sequent
    hypotheses: tuple = ()
    contexts: tuple = ()

    status = "not-supported"

    def __bool__(self):
        return False

    def recheck(self) -> bool:
        for h, theta in zip(self.hypotheses, self.contexts):
            if not derivable(self.base, Sequent(frozenset(), frozenset(theta) | {h})):
                return False
        return not derivable(self.base, self.query)

    def describe(self) -> str:
        lines = [f"fails: |/- {render(self.query)}"]
        for h, theta in zip(self.hypotheses, self.contexts):
            lines.append(f"  although |- {render(Sequent(frozenset(), frozenset(theta) | {h}))}")
        added = [g for g in self.base.ground]
        if added:
            lines.append("  in the base with rules:")
            lines += [f"    {g.text()}" for g in added]
        return "\n".join(lines)


@dataclass(frozen=True)
class Unknown:
    reason: str

    status = "unknown"

    def __bool__(self):
        return False


SupportVerdict = Union[Supported, NotSupported, Unknown]


# ---------------------------------------------------------------------------
# Unfolding the right-hand clauses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Obligation:
    hypotheses: frozenset
    succedents: frozenset  # atoms only

    def __str__(self):
        return f"{render_list(self.hypotheses)} |= {render_list(self.succedents)}".strip()


def unfold(j: Judgment) -> tuple:
    """Apply the ∧, ∨, →, ⊥ clauses to the succedents until only atoms remain.

    The judgment's own antecedents become hypotheses of every obligation.
    """
    out = {}
    stack = [(j.antecedents, j.succedents)]
    while stack:
        hyps, succ = stack.pop()
        compound = ordered(a for a in succ if not isinstance(a, Atom))
        if not compound:
            out.setdefault(Obligation(hyps, succ), None)
            continue
        a = compound[0]
        rest = succ - {a}
        if isinstance(a, Bottom):
            stack.append((hyps, rest))
        elif isinstance(a, And):
            stack.append((hyps, rest | {a.right}))
            stack.append((hyps, rest | {a.left}))
        elif isinstance(a, Or):
            stack.append((hyps, rest | {a.left, a.right}))
        else:
            stack.append((hyps | {a.left}, rest | {a.right}))
    return tuple(sorted(out, key=lambda o: (render_list(o.hypotheses), render_list(o.succedents))))


# ---------------------------------------------------------------------------
# Atomic support
# ---------------------------------------------------------------------------


def _check_atoms(atoms, what):
    for a in atoms:
        if not isinstance(a, Atom):
            raise BaseError(f"{what} must be atomic, got {render(a)}")


def hypothesis_extension(base: Base, gamma: Iterable[Atom]) -> Base:
    """``base`` plus one axiom ``=> γ`` per hypothesis."""
    return extend(base, [axiom(Sequent.of([], [g])) for g in ordered(gamma)])


def support_atomic(base: Base, gamma: Iterable[Atom], delta: Iterable[Atom]) -> SupportVerdict:
    gamma, delta = frozenset(gamma), frozenset(delta)
    _check_atoms(gamma, "antecedents")
    _check_atoms(delta, "succedents")
    goal = Sequent(frozenset(), delta)
    if not gamma:
        if derivable(base, goal):
            return Supported(derivation(base, goal))
        return NotSupported(base, goal)

    # in the witness extension the hypotheses hold with empty contexts
    witness = hypothesis_extension(base, gamma)
    ctx = tuple(frozenset() for _ in gamma)
    if not derivable(witness, goal):
        return NotSupported(witness, goal, tuple(ordered(gamma)), ctx)
    if base.closure == ST:
        return Supported(derivation(base, Sequent(gamma, delta)))
    # cut-free closure: only the easy positive cases are sound
    if gamma & delta:
        return Supported("a hypothesis occurs among the succedents")
    if derivable(base, goal):
        return Supported(derivation(base, goal))
    return Unknown("hypothetical atomic support over a cut-free base")


# ---------------------------------------------------------------------------
# Oracle over simulation bases
# ---------------------------------------------------------------------------


def _exact_categorical(base: Base, obligations) -> SupportVerdict:
    proofs = []
    for ob in obligations:
        v = support_atomic(base, (), ob.succedents)
        if not isinstance(v, Supported):
            return v
        proofs.append(v.witness)
    return Supported(tuple(proofs))


def support_oracle(base: Base, gamma: Iterable[Formula], delta: Iterable[Formula]) -> SupportVerdict:
    """Support of a formula judgment.

    Exact when there are no hypotheses after unfolding (any base), when the
    base extends a full cut-closed simulation base covering the judgment, or
    when it extends a quasi-simulation base and ``gamma`` is empty.
    """
    gamma, delta = frozenset(gamma), frozenset(delta)
    obligations = unfold(Judgment(gamma, delta, base))
    if all(not ob.hypotheses for ob in obligations):
        return _exact_categorical(base, obligations)

    m = base.mapping
    if m is None:
        if all(isinstance(h, Atom) for ob in obligations for h in ob.hypotheses):
            atomic = [support_atomic(base, ob.hypotheses, ob.succedents) for ob in obligations]
            for v in atomic:
                if not isinstance(v, Supported):
                    return v
            return Supported(tuple(v.witness for v in atomic))
        return Unknown("no simulation mapping for compound hypotheses")
    outside = [a for a in gamma | delta if a not in m.scope and a not in m.inverse]
    if outside:
        raise ScopeError(f"{render_list(outside)} outside the mapped scope")

    def image(formulas):
        # proxy atoms already denote their formula
        return frozenset(a if a in m.inverse else m(a) for a in formulas)

    if base.variant == FULL and base.closure == ST:
        q = Sequent(image(gamma), image(delta))
        if derivable(base, q):
            return Supported(derivation(base, q))
        witness = hypothesis_extension(base, q.left)
        return NotSupported(witness, Sequent(frozenset(), q.right), tuple(ordered(q.left)), tuple(frozenset() for _ in q.left))
    if base.variant == QUASI and not gamma:
        q = Sequent(frozenset(), image(delta))
        if derivable(base, q):
            return Supported(derivation(base, q))
        return NotSupported(base, q)
    return Unknown(f"no exact oracle for a {base.variant} base closed under {base.closure} with hypotheses")


# ---------------------------------------------------------------------------
# Bounded refutation
# ---------------------------------------------------------------------------


def candidate_axioms(universe: Iterable[Atom]) -> list:
    """Axioms ``=> S`` for non-empty ``S``, by size then text."""
    atoms = ordered(universe)
    out = []
    for k in range(1, len(atoms) + 1):
        for combo in itertools.combinations(atoms, k):
            out.append(axiom(Sequent.of([], combo)))
    return out


def _refute_at(c: Base, ob: Obligation, universe) -> Optional[NotSupported]:
    hyps = ordered(ob.hypotheses)
    c = hypothesis_extension(c, hyps)
    ds = saturate(c, universe)
    options = []
    for h in hyps:
        # a minimal categorical witness without h only gives a derivable target
        opts = [m.right - {h} for m in ds.minimal if not m.left and h in m.right]
        options.append(sorted(opts, key=lambda t: (len(t), render_list(t))))
    for contexts in itertools.product(*options):
        target = Sequent(frozenset(), frozenset(ob.succedents).union(*contexts))
        if not ds.derives(target):
            return NotSupported(c, target, tuple(hyps), tuple(contexts))
    return None


def support_refute(base: Base, j: Judgment, budget: int = 1) -> SupportVerdict:
    """Search extensions of ``base`` by at most ``budget`` axioms ``=> S``
    for one where an unfolded obligation fails. Never returns Supported."""
    obligations = unfold(j)
    if any(not isinstance(h, Atom) for ob in obligations for h in ob.hypotheses):
        return Unknown("compound hypotheses")
    universe = base.atoms() | frozenset(a for ob in obligations for a in ob.hypotheses | ob.succedents)
    pool = candidate_axioms(universe)
    for k in range(budget + 1):
        for extra in itertools.combinations(pool, k):
            c = extend(base, extra)
            for ob in obligations:
                found = _refute_at(c, ob, universe)
                if found is not None:
                    return found
    return Unknown(f"no counter-extension with at most {budget} added axioms")


def support_exact(base: Base, j: Judgment) -> SupportVerdict:
    """The exact fragment: atomic judgments, or categorical ones."""
    if j.is_atomic:
        return support_atomic(base, j.antecedents, j.succedents)
    obligations = unfold(j)
    if all(not ob.hypotheses for ob in obligations):
        return _exact_categorical(base, obligations)
    return Unknown("hypotheses are not atomic; use the oracle or refute mode")


# ---------------------------------------------------------------------------
# Validity
# ---------------------------------------------------------------------------

WITH_CUT = "with-cut"
CUT_FREE = "cut-free"


@dataclass(frozen=True)
class Validity:
    valid: bool
    certificate: object  # a Proof, or a falsifying valuation

    def __bool__(self):
        return self.valid


def valid(gamma: Iterable[Formula], delta: Iterable[Formula], flavor: str = WITH_CUT) -> Validity:
    """Validity relative to the cut-closed (``with-cut``) or cut-free bases.

    Both coincide with classical provability, so this decides via the prover.
    """
    if flavor not in (WITH_CUT, CUT_FREE):
        raise ValueError(f"flavor must be {WITH_CUT!r} or {CUT_FREE!r}")
    r = prove(Sequent(frozenset(gamma), frozenset(delta)))
    if isinstance(r, Provable):
        return Validity(True, r.proof)
    return Validity(False, r.valuation)
