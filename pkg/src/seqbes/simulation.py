"""Simulation bases and proof extraction from semantic validity.

Every subformula ``A`` of the end-sequent gets a proxy atom ``p^A``
(``α(p) = p`` for atoms). A *full* simulation base mimics each CLp rule on
proxies and is closed under atomic cut; a *quasi* simulation base replaces
the left rules by right-to-right ``Q`` rules and has no atomic cut.

Extraction turns the atomic derivation of ``=> α(Δ)`` in the base extended
by ``=> α(B)`` for each hypothesis ``B`` into a CLp proof of ``Γ => Δ``:

1. derivation Π of ``=> Σ`` for some ``Σ ⊆ α(Δ)``;
2. Π′: the added axioms become identity axioms ``α(Γ) => α(B)`` and
   ``α(Γ)`` is carried down to the root, which is then weakened to
   ``α(Γ) => α(Δ)``;
3. Π″: proxies replaced by their formulas (``Acut`` becomes ``Cut``; quasi
   rules become ``Q*`` placeholders);
4. quasi only: each ``Q*`` node is replaced by a cut against a small CLp gadget;
5. cuts eliminated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .bases import (
    AINIT,
    ACUT,
    HS,
    ST,
    Base,
    BaseError,
    Derivation,
    SchemaRule,
    axiom,
    check_derivation,
    extend,
    make_base,
    saturate,
    _rebuild,
)
from .clp import Proof, Provable, Rule, Q_RULES, check_proof, eliminate_cuts, prove
from .syntax import (
    BOT,
    And,
    Atom,
    Bottom,
    Formula,
    Or,
    Sequent,
    mapped_name,
    ordered,
    render,
    subformulas,
)

FULL = "full"
QUASI = "quasi"


class ScopeError(ValueError):
    pass


class ExtractionError(RuntimeError):
    """A pipeline stage failed its check; this indicates a bug."""


# ---------------------------------------------------------------------------
# Atomic mappings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AtomicMapping:
    forward: dict
    inverse: dict
    scope: frozenset

    def __call__(self, a: Formula) -> Atom:
        try:
            return self.forward[a]
        except KeyError:
            raise ScopeError(f"{render(a)} is outside the mapped scope") from None

    def image(self, formulas: Iterable[Formula]) -> frozenset:
        return frozenset(self(a) for a in formulas)

    def formula_of(self, p: Atom) -> Formula:
        if p in self.inverse:
            return self.inverse[p]
        if p.is_mapped:
            raise ScopeError(f"proxy atom {p} is not in the mapping")
        return p

    def unmap(self, s: Sequent) -> Sequent:
        return Sequent(frozenset(map(self.formula_of, s.left)), frozenset(map(self.formula_of, s.right)))

    def covers(self, formulas: Iterable[Formula]) -> bool:
        return all(a in self.forward for a in formulas)


def atomic_mapping(sigma: Iterable[Formula]) -> AtomicMapping:
    scope = subformulas(list(sigma))
    forward = {}
    for a in ordered(scope):
        if isinstance(a, Atom):
            if a.is_mapped:
                raise ScopeError(f"user atom {a} uses the reserved '@' prefix")
            forward[a] = a
        else:
            forward[a] = Atom(mapped_name(a))
    inverse = {p: a for a, p in forward.items()}
    return AtomicMapping(forward, inverse, scope)


# ---------------------------------------------------------------------------
# Simulation bases
# ---------------------------------------------------------------------------


def _seq(left=(), right=()) -> Sequent:
    return Sequent.of(left, right)


def _full_schemas(c: Formula, m: AtomicMapping) -> list:
    pc = m(c)
    if isinstance(c, Bottom):
        return [
            SchemaRule("Lbot", (), _seq([pc], []), c),
            SchemaRule("Rbot", (_seq(),), _seq([], [pc]), c),
        ]
    pa, pb = m(c.left), m(c.right)
    if isinstance(c, And):
        return [
            SchemaRule("L&", (_seq([pa, pb], []),), _seq([pc], []), c),
            SchemaRule("R&", (_seq([], [pa]), _seq([], [pb])), _seq([], [pc]), c),
        ]
    if isinstance(c, Or):
        return [
            SchemaRule("L|", (_seq([pa], []), _seq([pb], [])), _seq([pc], []), c),
            SchemaRule("R|", (_seq([], [pa, pb]),), _seq([], [pc]), c),
        ]
    return [
        SchemaRule("L->", (_seq([], [pa]), _seq([pb], [])), _seq([pc], []), c),
        SchemaRule("R->", (_seq([pa], [pb]),), _seq([], [pc]), c),
    ]


def _quasi_schemas(c: Formula, m: AtomicMapping) -> list:
    pc = m(c)
    if isinstance(c, Bottom):
        return [SchemaRule("Qbot", (_seq([], [pc]),), _seq(), c)]
    pa, pb = m(c.left), m(c.right)
    if isinstance(c, And):
        return [
            SchemaRule("Q&1", (_seq([], [pc]),), _seq([], [pa]), c),
            SchemaRule("Q&2", (_seq([], [pc]),), _seq([], [pb]), c),
            SchemaRule("R&", (_seq([], [pa]), _seq([], [pb])), _seq([], [pc]), c),
        ]
    if isinstance(c, Or):
        return [
            SchemaRule("Q|", (_seq([], [pc]),), _seq([], [pa, pb]), c),
            SchemaRule("R|", (_seq([], [pa, pb]),), _seq([], [pc]), c),
        ]
    return [
        SchemaRule("Q->", (_seq([], [pc]), _seq([], [pa])), _seq([], [pb]), c),
        SchemaRule("R->", (_seq([pa], [pb]),), _seq([], [pc]), c),
    ]


def simulation_base(
    sigma: Iterable[Formula],
    mapping: Optional[AtomicMapping] = None,
    variant: str = FULL,
    closure: Optional[str] = None,
) -> Base:
    """The simulation (``full``) or quasi-simulation (``quasi``) base for ``sigma``.

    ``closure`` defaults to ``st`` for full and ``hs`` for quasi; passing
    ``closure="hs"`` with ``variant="full"`` gives the cut-free closure of the
    full rules, where the connective clauses stop matching derivability.
    """
    sigma = list(sigma)
    if mapping is None:
        mapping = atomic_mapping(sigma)
    scope = subformulas(sigma)
    if not mapping.covers(scope):
        missing = ordered(a for a in scope if a not in mapping.forward)
        raise ScopeError(f"mapping does not cover {', '.join(map(render, missing))}")
    if variant not in (FULL, QUASI):
        raise ValueError(f"variant must be 'full' or 'quasi', got {variant!r}")
    if closure is None:
        closure = ST if variant == FULL else HS
    make = _full_schemas if variant == FULL else _quasi_schemas
    schemas = []
    for c in ordered(a for a in scope if not isinstance(a, Atom)):
        schemas.extend(make(c, mapping))
    base = make_base((), closure, schemas)
    return Base(base.ground, base.schemas, base.closure, None, mapping, variant)


# ---------------------------------------------------------------------------
# Derivation transformations
# ---------------------------------------------------------------------------


def _ainit(p: Atom):
    return SchemaRule(AINIT).instances([p])[0]


def prepend_context(d: Derivation, gamma: Iterable[Atom], marked: Iterable[str]) -> Derivation:
    """Replace marked axioms ``=> θ`` by identity axioms ``Γ => θ`` and add
    ``Γ`` to the antecedent of every node below them."""
    gamma = frozenset(gamma)
    marked = frozenset(marked)

    def walk(node: Derivation):
        inst = node.rule
        if inst.ground is not None and inst.ground.id in marked:
            g = inst.ground
            if g.premises or g.conclusion.left:
                raise BaseError(f"marked rule {g.id} is not a categorical axiom")
            shared = ordered(g.conclusion.right & gamma)
            if not shared:
                raise BaseError(f"marked axiom {g.id} shares no atom with the context")
            return Derivation(node.conclusion.weaken(gamma), _ainit(shared[0])), True
        if not node.children:
            return node, False
        results = [walk(c) for c in node.children]
        if not any(t for _, t in results):
            return node, False
        return Derivation(node.conclusion.weaken(gamma), inst, tuple(c for c, _ in results)), True

    return walk(d)[0]


_SCHEMA_RULE = {
    "L&": Rule.L_AND, "R&": Rule.R_AND, "L|": Rule.L_OR, "R|": Rule.R_OR,
    "L->": Rule.L_IMP, "R->": Rule.R_IMP, "Lbot": Rule.L_BOT, "Rbot": Rule.R_BOT,
    "Q&1": Rule.Q_AND1, "Q&2": Rule.Q_AND2, "Q|": Rule.Q_OR, "Q->": Rule.Q_IMP, "Qbot": Rule.Q_BOT,
}
_NO_FORMULA = {Rule.L_BOT, Rule.R_BOT, Rule.Q_BOT}


def substitute(d: Derivation, m: AtomicMapping) -> Proof:
    """Replace every proxy ``p^A`` by ``A``, node by node."""
    inst = d.rule
    conclusion = m.unmap(d.conclusion)
    premises = tuple(substitute(c, m) for c in d.children)
    if inst.source == AINIT:
        return Proof(conclusion, Rule.INIT, premises, m.formula_of(inst.atom))
    if inst.source == ACUT:
        return Proof(conclusion, Rule.CUT, premises, m.formula_of(inst.atom))
    if inst.schema is not None and inst.schema.tag in _SCHEMA_RULE:
        rule = _SCHEMA_RULE[inst.schema.tag]
        formula = None if rule in _NO_FORMULA else inst.schema.formula
        return Proof(conclusion, rule, premises, formula)
    raise ScopeError(f"rule {inst.source} has no image in the sequent calculus")


def _init(left, right, a) -> Proof:
    return Proof(Sequent.of(left, right), Rule.INIT, (), a)


def _gadget(node: Proof, kids: tuple) -> Proof:
    f, n = node.formula, node.conclusion
    if node.rule in (Rule.Q_AND1, Rule.Q_AND2):
        a = f.left if node.rule is Rule.Q_AND1 else f.right
        g = Proof(Sequent.of([f], [a]), Rule.L_AND, (_init([f.left, f.right], [a], a),), f)
        return Proof(n, Rule.CUT, (kids[0], g), f)
    if node.rule is Rule.Q_OR:
        sigma = kids[0].conclusion.right - {f}
        g = Proof(
            Sequent.of([f], sigma | {f.left, f.right}),
            Rule.L_OR,
            (_init([f.left], sigma | {f.left}, f.left), _init([f.right], sigma | {f.right}, f.right)),
            f,
        )
        return Proof(n, Rule.CUT, (kids[0], g), f)
    if node.rule is Rule.Q_BOT:
        return Proof(n, Rule.CUT, (kids[0], Proof(Sequent.of([BOT], []), Rule.L_BOT)), BOT)
    if node.rule is Rule.Q_IMP:
        a, b = f.left, f.right
        c1, c2 = kids
        mp = Proof(Sequent.of([f, a], [b]), Rule.L_IMP, (_init([a], [a], a), _init([b], [b], b)), f)
        keep_a = {a} & c2.conclusion.right & n.right
        inner = Proof(
            Sequent(c2.conclusion.left | {f}, (c2.conclusion.right - {a}) | {b} | keep_a),
            Rule.CUT,
            (c2, mp),
            a,
        )
        return Proof(n, Rule.CUT, (c1, inner), f)
    raise ValueError(f"unknown placeholder rule {node.rule}")


def rewrite_q_rules(p: Proof) -> Proof:
    """Replace each ``Q*`` placeholder by a cut against a CLp gadget."""
    kids = tuple(rewrite_q_rules(c) for c in p.premises)
    if p.rule in Q_RULES:
        return _gadget(p, kids)
    if kids == p.premises:
        return p
    return Proof(p.conclusion, p.rule, kids, p.formula)


# ---------------------------------------------------------------------------
# Extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtractionReport:
    sequent: Sequent
    variant: str
    mapping: AtomicMapping
    base: Base
    stage_pi: Derivation
    stage_pi_prime: Derivation
    stage_pi_dprime: Proof
    stage_rewritten: Optional[Proof]
    final: Proof
    statistics: dict = field(default_factory=dict)

    def q_rules_used(self) -> set:
        return self.stage_pi_dprime.rules_used() & Q_RULES

    def to_dict(self) -> dict:
        d = {
            "sequent": render(self.sequent),
            "variant": self.variant,
            "mapping": {render(a): p.name for a, p in sorted(self.mapping.forward.items(), key=lambda kv: kv[1].name)},
            "stages": {
                "pi": self.stage_pi.to_dict(),
                "pi_prime": self.stage_pi_prime.to_dict(),
                "pi_dprime": self.stage_pi_dprime.to_dict(),
            },
            "final": self.final.to_dict(),
            "statistics": dict(self.statistics),
        }
        if self.stage_rewritten is not None:
            d["stages"]["rewritten"] = self.stage_rewritten.to_dict()
        return d


def extract_proof(gamma: Iterable[Formula], delta: Iterable[Formula], variant: str = FULL) -> ExtractionReport:
    gamma, delta = frozenset(gamma), frozenset(delta)
    target = Sequent(gamma, delta)
    if not isinstance(prove(target), Provable):
        raise ValueError(f"not valid: {render(target)}")

    m = atomic_mapping(gamma | delta)
    sim = simulation_base(gamma | delta, m, variant)
    hyps = [axiom(Sequent.of([], [m(b)])) for b in ordered(gamma)]
    base = extend(sim, hyps)
    gamma_at, delta_at = m.image(gamma), m.image(delta)

    ds = saturate(base, gamma_at | delta_at)
    goal = Sequent(frozenset(), delta_at)
    found = ds.subsumer(goal)
    if found is None:
        raise ExtractionError(f"=> {render(goal)} not derivable in the {variant} simulation base")
    pi = _rebuild(ds, found, {})
    _checked(check_derivation, pi, base, stage="Π")

    pi_prime = prepend_context(pi, gamma_at, {h.id for h in hyps})
    pi_prime = pi_prime.weaken(gamma_at - pi_prime.conclusion.left, delta_at - pi_prime.conclusion.right)
    _checked(check_derivation, pi_prime, sim, stage="Π′")

    pi_dprime = substitute(pi_prime, m)
    _checked(check_proof, pi_dprime, True, variant == QUASI, stage="Π″")

    rewritten = None
    cut_proof = pi_dprime
    if variant == QUASI:
        rewritten = rewrite_q_rules(pi_dprime)
        _checked(check_proof, rewritten, True, stage="rewritten Π″")
        cut_proof = rewritten

    final = eliminate_cuts(cut_proof)
    _checked(check_proof, final, False, stage="final")
    if final.conclusion != target:
        raise ExtractionError(f"final proof concludes {render(final.conclusion)}, expected {render(target)}")

    stats = {
        "universe": len(ds.universe),
        "antichain": len(ds.minimal),
        "pi_nodes": pi.size(),
        "pi_prime_nodes": pi_prime.size(),
        "pi_dprime_nodes": pi_dprime.size(),
        "final_nodes": final.size(),
        "cuts_before_elimination": sum(n.rule is Rule.CUT for n in cut_proof.nodes()),
    }
    if rewritten is not None:
        stats["rewritten_nodes"] = rewritten.size()
    return ExtractionReport(target, variant, m, base, pi, pi_prime, pi_dprime, rewritten, final, stats)


def _checked(check, *args, stage):
    try:
        check(*args)
    except ValueError as e:
        raise ExtractionError(f"stage {stage} failed its check: {e}") from e


# ---------------------------------------------------------------------------
# The cut-free counterexample
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fact:
    variant: str
    query: Sequent
    expected: bool
    actual: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def __str__(self):
        mark = "|-" if self.actual else "|/-"
        status = "ok" if self.ok else "MISMATCH"
        return f"[{self.variant}] {mark} {render(self.query)}    ({status})"


@dataclass(frozen=True)
class CounterexampleReport:
    facts: tuple
    note: str

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.facts)

    def to_text(self) -> str:
        return "\n".join([*map(str, self.facts), self.note])

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "facts": [
                {"variant": f.variant, "query": render(f.query), "expected": f.expected, "actual": f.actual}
                for f in self.facts
            ],
            "note": self.note,
        }


def prop6_counterexample() -> CounterexampleReport:
    """Why the simulation needs atomic cut: ``q & r |= q`` over the full
    simulation base closed only under identity axioms."""
    from .bases import derivable

    q, r = Atom("q"), Atom("r")
    qr = And(q, r)
    m = atomic_mapping([qr, q])
    p = m(qr)
    facts = []
    for closure, checks in (
        (HS, [((), (p,), True), ((p,), (q,), True), ((p,), (r,), True), ((), (q,), False), ((), (r,), False)]),
        (ST, [((), (q,), True)]),
    ):
        base = extend(simulation_base([qr, q], m, FULL, closure), [axiom(Sequent.of([], [p]))])
        for left, right, expected in checks:
            s = Sequent.of(left, right)
            facts.append(Fact(closure, s, expected, derivable(base, s)))
    note = (
        "note: the underivable pair is '=> q' and '=> r'; a wording that names "
        "'=> p' and '=> q' instead is read as a slip, since no atom p occurs here"
    )
    return CounterexampleReport(tuple(facts), note)
