"""The multiplicative, set-based classical sequent calculus CLp.

Rules (contexts are sets, binary rules take the union of premise contexts)::

    init   Γ, A => A, Δ                  Lbot  Γ, bot => Δ
    L&     A, B, Γ => Δ  /  A & B, Γ => Δ
    R&     Γ => Δ, A    Γ' => Δ', B  /  Γ, Γ' => Δ, Δ', A & B
    L|     A, Γ => Δ    B, Γ' => Δ'  /  A | B, Γ, Γ' => Δ, Δ'
    R|     Γ => Δ, A, B  /  Γ => Δ, A | B
    L->    Γ => Δ, A    B, Γ' => Δ'  /  A -> B, Γ, Γ' => Δ, Δ'
    R->    A, Γ => Δ, B  /  Γ => Δ, A -> B
    Rbot   Γ => Δ  /  Γ => bot, Δ
    Cut    Γ => Δ, A    A, Γ' => Δ'  /  Γ, Γ' => Δ, Δ'

The checker also knows the ``Q*`` placeholder rules produced when a
quasi-simulation derivation is translated back to formulas; they are legal
only with ``allow_q=True`` and are removed by
:func:`seqbes.simulation.rewrite_q_rules`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .syntax import (
    BOT,
    And,
    Atom,
    Bottom,
    Formula,
    Imp,
    Or,
    Sequent,
    atoms_of,
    is_compound,
    ordered,
    parse_formula,
    parse_sequent,
    render,
)


class Rule(str, Enum):
    INIT = "init"
    L_AND = "L&"
    R_AND = "R&"
    L_OR = "L|"
    R_OR = "R|"
    L_IMP = "L->"
    R_IMP = "R->"
    L_BOT = "Lbot"
    R_BOT = "Rbot"
    CUT = "Cut"
    Q_AND1 = "Q&1*"
    Q_AND2 = "Q&2*"
    Q_OR = "Q|*"
    Q_IMP = "Q->*"
    Q_BOT = "Qbot*"

    def __str__(self):
        return self.value


Q_RULES = frozenset({Rule.Q_AND1, Rule.Q_AND2, Rule.Q_OR, Rule.Q_IMP, Rule.Q_BOT})

ARITY = {
    Rule.INIT: 0, Rule.L_BOT: 0,
    Rule.L_AND: 1, Rule.R_OR: 1, Rule.R_IMP: 1, Rule.R_BOT: 1,
    Rule.R_AND: 2, Rule.L_OR: 2, Rule.L_IMP: 2, Rule.CUT: 2,
    Rule.Q_AND1: 1, Rule.Q_AND2: 1, Rule.Q_OR: 1, Rule.Q_BOT: 1, Rule.Q_IMP: 2,
}

# which constructor the rule's formula field must have
_FORMULA_KIND = {
    Rule.L_AND: And, Rule.R_AND: And, Rule.Q_AND1: And, Rule.Q_AND2: And,
    Rule.L_OR: Or, Rule.R_OR: Or, Rule.Q_OR: Or,
    Rule.L_IMP: Imp, Rule.R_IMP: Imp, Rule.Q_IMP: Imp,
}


@dataclass(frozen=True)
class Proof:
    """A proof tree node.

    ``formula`` is the principal formula (``init``: the identity formula,
    ``Cut``: the cut formula, ``Q*``: the source formula of the rule); it is
    ``None`` for ``Lbot``, ``Rbot`` and ``Qbot*``.
    """

    conclusion: Sequent
    rule: Rule
    premises: tuple = ()
    formula: Optional[Formula] = None

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()

    def rules_used(self) -> set:
        return {n.rule for n in self.nodes()}

    def has_cut(self) -> bool:
        return any(n.rule is Rule.CUT for n in self.nodes())

    def weaken(self, left=(), right=()) -> "Proof":
        """Add formulas to both sides of every node; stays a legal proof."""
        left, right = frozenset(left), frozenset(right)
        if not left and not right:
            return self
        return Proof(
            self.conclusion.weaken(left, right),
            self.rule,
            tuple(p.weaken(left, right) for p in self.premises),
            self.formula,
        )

    def to_text(self, indent: int = 0) -> str:
        label = self.rule.value + (f" [{render(self.formula)}]" if self.formula is not None else "")
        lines = ["  " * indent + f"{render(self.conclusion)}    ({label})"]
        lines += [p.to_text(indent + 1) for p in self.premises]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        d = {"sequent": render(self.conclusion), "rule": self.rule.value}
        if self.formula is not None:
            d["formula"] = render(self.formula)
        d["premises"] = [p.to_dict() for p in self.premises]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Proof":
        formula = parse_formula(d["formula"]) if d.get("formula") is not None else None
        return cls(
            parse_sequent(d["sequent"]),
            Rule(d["rule"]),
            tuple(cls.from_dict(p) for p in d.get("premises", ())),
            formula,
        )

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "Proof":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------


class ProofError(ValueError):
    """A node violates its rule. ``path`` lists premise indices from the root."""

    def __init__(self, path: tuple, node: Proof, reason: str):
        self.path = path
        self.node = node
        self.reason = reason
        where = "root" if not path else "root." + ".".join(map(str, path))
        super().__init__(f"{where}: {node.rule.value} concluding '{render(node.conclusion)}': {reason}")


def _shape(rule: Rule, f: Optional[Formula]):
    """Active formulas per premise and the principal formulas of the conclusion.

    Returns ``(premise_actives, principal_left, principal_right)`` where
    ``premise_actives`` is a list of ``(left, right)`` frozensets.
    """
    E = frozenset()
    one = lambda *xs: frozenset(xs)  # noqa: E731
    if rule is Rule.L_AND:
        return [(one(f.left, f.right), E)], one(f), E
    if rule is Rule.R_AND:
        return [(E, one(f.left)), (E, one(f.right))], E, one(f)
    if rule is Rule.L_OR:
        return [(one(f.left), E), (one(f.right), E)], one(f), E
    if rule is Rule.R_OR:
        return [(E, one(f.left, f.right))], E, one(f)
    if rule is Rule.L_IMP:
        return [(E, one(f.left)), (one(f.right), E)], one(f), E
    if rule is Rule.R_IMP:
        return [(one(f.left), one(f.right))], E, one(f)
    if rule is Rule.R_BOT:
        return [(E, E)], E, one(BOT)
    if rule is Rule.CUT:
        return [(E, one(f)), (one(f), E)], E, E
    if rule is Rule.Q_AND1:
        return [(E, one(f))], E, one(f.left)
    if rule is Rule.Q_AND2:
        return [(E, one(f))], E, one(f.right)
    if rule is Rule.Q_OR:
        return [(E, one(f))], E, one(f.left, f.right)
    if rule is Rule.Q_IMP:
        return [(E, one(f)), (E, one(f.left))], E, one(f.right)
    if rule is Rule.Q_BOT:
        return [(E, one(BOT))], E, E
    raise AssertionError(rule)


def _check_node(node: Proof) -> Optional[str]:
    rule, f, c = node.rule, node.formula, node.conclusion
    if len(node.premises) != ARITY[rule]:
        return f"expected {ARITY[rule]} premises, got {len(node.premises)}"
    if rule is Rule.INIT:
        if f is None:
            common = c.left & c.right
            return None if common else "no formula occurs on both sides"
        return None if f in c.left and f in c.right else f"{render(f)} is not on both sides"
    if rule is Rule.L_BOT:
        return None if BOT in c.left else "bot is not in the antecedent"
    if rule in _FORMULA_KIND and not isinstance(f, _FORMULA_KIND[rule]):
        return f"principal formula must be a {_FORMULA_KIND[rule].__name__}"
    if rule is Rule.CUT and f is None:
        return "cut formula missing"
    actives, pl, pr = _shape(rule, f)
    low_l, low_r, up_l, up_r = set(pl), set(pr), set(pl), set(pr)
    for i, ((al, ar), prem) in enumerate(zip(actives, node.premises)):
        s = prem.conclusion
        if not al <= s.left:
            return f"premise {i} antecedent lacks {', '.join(map(render, ordered(al - s.left)))}"
        if not ar <= s.right:
            return f"premise {i} succedent lacks {', '.join(map(render, ordered(ar - s.right)))}"
        low_l |= s.left - al
        low_r |= s.right - ar
        up_l |= s.left
        up_r |= s.right
    # a context may or may not re-contain its active formula (sets), hence an interval
    if not (low_l <= c.left <= up_l):
        return (
            "antecedent is not a union of the premise contexts: "
            f"needs {{{', '.join(map(render, ordered(low_l - c.left)))}}}, "
            f"extra {{{', '.join(map(render, ordered(c.left - up_l)))}}}"
        )
    if not (low_r <= c.right <= up_r):
        return (
            "succedent is not a union of the premise contexts: "
            f"needs {{{', '.join(map(render, ordered(low_r - c.right)))}}}, "
            f"extra {{{', '.join(map(render, ordered(c.right - up_r)))}}}"
        )
    return None


def check_proof(proof: Proof, allow_cut: bool = False, allow_q: bool = False) -> None:
    """Raise :class:`ProofError` at the first illegal node (pre-order)."""
    stack = [((), proof)]
    while stack:
        path, node = stack.pop()
        if node.rule is Rule.CUT and not allow_cut:
            raise ProofError(path, node, "Cut is not allowed")
        if node.rule in Q_RULES and not allow_q:
            raise ProofError(path, node, "Q* placeholder rules are not CLp rules")
        reason = _check_node(node)
        if reason:
            raise ProofError(path, node, reason)
        for i in reversed(range(len(node.premises))):
            stack.append((path + (i,), node.premises[i]))


def is_proof(proof: Proof, allow_cut: bool = False, allow_q: bool = False) -> bool:
    try:
        check_proof(proof, allow_cut, allow_q)
    except ProofError:
        return False
    return True


# ---------------------------------------------------------------------------
# Decision procedure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Provable:
    proof: Proof

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Refutable:
    valuation: dict

    def __bool__(self):
        return False


def _pick(formulas) -> Optional[Formula]:
    cands = [a for a in formulas if is_compound(a)]
    return ordered(cands)[0] if cands else None


def _search(s: Sequent):
    """Backward search; returns a Proof or the atoms-only open leaf."""
    common = s.left & s.right
    if common:
        return Proof(s, Rule.INIT, (), ordered(common)[0])
    if BOT in s.left:
        return Proof(s, Rule.L_BOT)
    if BOT in s.right:
        sub = _search(Sequent(s.left, s.right - {BOT}))
        return sub if isinstance(sub, Sequent) else Proof(s, Rule.R_BOT, (sub,))
    # every rule is invertible with the whole context copied into each premise
    a = _pick(s.left)
    if a is not None:
        rest = s.left - {a}
        if isinstance(a, And):
            prems = [Sequent(rest | {a.left, a.right}, s.right)]
            rule = Rule.L_AND
        elif isinstance(a, Or):
            prems = [Sequent(rest | {a.left}, s.right), Sequent(rest | {a.right}, s.right)]
            rule = Rule.L_OR
        else:
            prems = [Sequent(rest, s.right | {a.left}), Sequent(rest | {a.right}, s.right)]
            rule = Rule.L_IMP
        return _close(s, rule, a, prems)
    a = _pick(s.right)
    if a is not None:
        rest = s.right - {a}
        if isinstance(a, And):
            prems = [Sequent(s.left, rest | {a.left}), Sequent(s.left, rest | {a.right})]
            rule = Rule.R_AND
        elif isinstance(a, Or):
            prems = [Sequent(s.left, rest | {a.left, a.right})]
            rule = Rule.R_OR
        else:
            prems = [Sequent(s.left | {a.left}, rest | {a.right})]
            rule = Rule.R_IMP
        return _close(s, rule, a, prems)
    return s


def _close(s, rule, a, prems):
    subs = []
    for p in prems:
        sub = _search(p)
        if isinstance(sub, Sequent):
            return sub
        subs.append(sub)
    return Proof(s, rule, tuple(subs), a)


def prove(s: Sequent):
    """Decide ``s``: :class:`Provable` with a cut-free proof, or :class:`Refutable`."""
    result = _search(s)
    if isinstance(result, Proof):
        return Provable(result)
    true_atoms = result.left
    return Refutable({p: p in true_atoms for p in ordered(atoms_of(s))})


def evaluate(a: Formula, valuation: dict) -> bool:
    if isinstance(a, Atom):
        return valuation[a]
    if isinstance(a, Bottom):
        return False
    if isinstance(a, And):
        return evaluate(a.left, valuation) and evaluate(a.right, valuation)
    if isinstance(a, Or):
        return evaluate(a.left, valuation) or evaluate(a.right, valuation)
    return (not evaluate(a.left, valuation)) or evaluate(a.right, valuation)


def falsifies(valuation: dict, s: Sequent) -> bool:
    return all(evaluate(a, valuation) for a in s.left) and not any(evaluate(a, valuation) for a in s.right)


def truth_table_valid(s: Sequent) -> bool:
    atoms = ordered(atoms_of(s))
    for bits in itertools.product((False, True), repeat=len(atoms)):
        if falsifies(dict(zip(atoms, bits)), s):
            return False
    return True


def eliminate_cuts(proof: Proof) -> Proof:
    """Cut-free proof of the same end-sequent.

    Cut is admissible in CLp, so the end-sequent is simply re-decided by
    :func:`prove`; the input must be a correct proof (cuts allowed).
    """
    if not proof.has_cut():
        return proof
    check_proof(proof, allow_cut=True)
    result = prove(proof.conclusion)
    if not isinstance(result, Provable):  # pragma: no cover - would contradict soundness
        raise AssertionError(f"checked proof of an invalid sequent: {render(proof.conclusion)}")
    return result.proof
