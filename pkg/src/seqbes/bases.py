"""Atomic sequent bases and their derivability relation.

A base is a set of atomic rules ``P1 ... Pn / C``. Derivability closes the
rules under arbitrary side contexts: an axiom ``Γ => Δ`` yields every
``Θ, Γ => Δ, Σ``, and a rule fires on derivable ``Θi, Γi => Δi, Σi`` to give
``Θ1..Θn, Γ => Δ, Σ1..Σn``. Derivable sequents are therefore closed under
weakening and are represented by their subsumption-minimal members.

Schema families (``Ainit``, ``Acut`` and the simulation rules) carry context
slots, but those slots are redundant with the side contexts above, so each
schema is instantiated slot-free over the fixed atoms it mentions.

Saturation fires rules *canonically*: each premise is matched by a minimal
derivable sequent ``M`` (weakened to contain the premise pattern ``P``), and
the side context is exactly ``M - P``. Every other firing is subsumed by a
canonical one, so the fixpoint antichain is complete.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .syntax import Atom, Formula, Sequent, atoms_of, ordered, parse_sequent, render

HS = "hs"
ST = "st"


class BaseError(ValueError):
    pass


class NotDerivable(BaseError):
    pass


def _atomic(s: Sequent, what: str) -> Sequent:
    if not s.is_atomic:
        raise BaseError(f"{what} is not atomic: {render(s)}")
    return s


def _seq_key(s: Sequent) -> tuple:
    return (len(s.left) + len(s.right), render(s))


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroundRule:
    premises: tuple
    conclusion: Sequent
    id: str = ""

    def __post_init__(self):
        for p in self.premises:
            _atomic(p, "rule premise")
        _atomic(self.conclusion, "rule conclusion")
        if not self.id:
            object.__setattr__(self, "id", self.text())

    @property
    def is_axiom(self) -> bool:
        return not self.premises

    def atoms(self) -> frozenset:
        return atoms_of([*self.premises, self.conclusion])

    def text(self) -> str:
        return " ; ".join(render(p) for p in self.premises) + (" |- " if self.premises else "|- ") + render(self.conclusion)

    def __str__(self):
        return self.text()


def axiom(s) -> GroundRule:
    if isinstance(s, str):
        s = parse_sequent(s, allow_mapped=True)
    return GroundRule((), s)


def rule(premises: Sequence, conclusion) -> GroundRule:
    prems = tuple(parse_sequent(p, allow_mapped=True) if isinstance(p, str) else p for p in premises)
    if isinstance(conclusion, str):
        conclusion = parse_sequent(conclusion, allow_mapped=True)
    return GroundRule(prems, conclusion)


# Schema tags. Simulation schemas carry fixed atoms and their source formula.
AINIT = "Ainit"
ACUT = "Acut"
SIM_TAGS = ("L&", "R&", "L|", "R|", "L->", "R->", "Lbot", "Rbot", "Q&1", "Q&2", "Q|", "Q->", "Qbot")


@dataclass(frozen=True)
class SchemaRule:
    """A rule family.

    ``Ainit``/``Acut`` range over every atom of the universe. Simulation
    schemas fix their atoms: ``premises``/``conclusion`` are the slot-free
    template, and ``formula`` is the formula whose proxy is principal.
    """

    tag: str
    premises: tuple = ()
    conclusion: Optional[Sequent] = None
    formula: Optional[Formula] = None

    @property
    def id(self) -> str:
        if self.formula is None:
            return self.tag
        return f"{self.tag}[{render(self.formula)}]"

    def atoms(self) -> frozenset:
        if self.conclusion is None:
            return frozenset()
        return atoms_of([*self.premises, self.conclusion])

    def instances(self, universe: Sequence[Atom]) -> list:
        if self.tag == AINIT:
            return [Instance(self.id, (), Sequent.of([p], [p]), p) for p in universe]
        if self.tag == ACUT:
            return [
                Instance(self.id, (Sequent.of([], [p]), Sequent.of([p], [])), Sequent.of(), p)
                for p in universe
            ]
        return [Instance(self.id, self.premises, self.conclusion, None, self)]

    def __str__(self):
        if self.conclusion is None:
            return self.tag
        return f"{self.id}: " + " ; ".join(render(p) for p in self.premises) + " / " + render(self.conclusion)


@dataclass(frozen=True)
class Instance:
    """A slot-free rule as used by saturation and derivation trees.

    ``source`` is the rule id; ``atom`` is the identity / cut atom for
    ``Ainit`` / ``Acut``; ``schema`` links back to a simulation schema.
    """

    source: str
    premises: tuple
    conclusion: Sequent
    atom: Optional[Atom] = None
    schema: Optional[SchemaRule] = None
    ground: Optional[GroundRule] = None

    @property
    def tag(self) -> str:
        if self.ground is not None:
            return "ground"
        return self.schema.tag if self.schema is not None else self.source

    def label(self) -> str:
        if self.atom is not None:
            return f"{self.source} {self.atom}"
        return self.source


def _ground_instance(g: GroundRule) -> Instance:
    return Instance(g.id, g.premises, g.conclusion, None, None, g)


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Base:
    ground: tuple
    schemas: tuple
    closure: str
    parent: Optional["Base"] = None
    mapping: object = None  # AtomicMapping for simulation bases
    variant: Optional[str] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def has_cut(self) -> bool:
        return self.closure == ST

    def atoms(self) -> frozenset:
        out = frozenset()
        for g in self.ground:
            out |= g.atoms()
        for s in self.schemas:
            out |= s.atoms()
        return out

    def instances(self, universe: Sequence[Atom]) -> list:
        out = []
        for s in self.schemas:
            out.extend(s.instances(universe))
        out.extend(_ground_instance(g) for g in self.ground)
        return out

    def is_extension_of(self, other: "Base") -> bool:
        return set(other.ground) <= set(self.ground) and set(other.schemas) <= set(self.schemas)

    def __repr__(self):
        return f"Base(closure={self.closure!r}, ground={len(self.ground)}, schemas={len(self.schemas)})"


def make_base(ground: Iterable[GroundRule] = (), closure: str = ST, schemas: Iterable[SchemaRule] = ()) -> Base:
    """A base closed under ``Ainit`` (and ``Acut`` when ``closure == "st"``)."""
    closure = closure.lower()
    if closure not in (HS, ST):
        raise BaseError(f"closure must be 'hs' or 'st', got {closure!r}")
    ground = tuple(ground)
    for g in ground:
        if not isinstance(g, GroundRule):
            raise BaseError(f"not an atomic rule: {g!r}")
    structural = (SchemaRule(AINIT),) + ((SchemaRule(ACUT),) if closure == ST else ())
    return Base(_dedupe(ground), structural + tuple(schemas), closure)


def _dedupe(items) -> tuple:
    return tuple(dict.fromkeys(items))


def extend(base: Base, rules: Iterable[GroundRule]) -> Base:
    rules = tuple(rules)
    if not rules:
        return base
    return Base(
        _dedupe(base.ground + rules), base.schemas, base.closure, base, base.mapping, base.variant
    )


ST_BASE = make_base((), ST)
HS_BASE = make_base((), HS)


# ---------------------------------------------------------------------------
# Saturation
# ---------------------------------------------------------------------------


class _Codec:
    """Atom sets <-> bitmasks over a fixed, canonically ordered universe."""

    def __init__(self, universe: Iterable[Atom]):
        self.atoms = ordered(frozenset(universe))
        self.index = {a: i for i, a in enumerate(self.atoms)}

    def mask(self, atoms) -> int:
        m = 0
        for a in atoms:
            m |= 1 << self.index[a]
        return m

    def encode(self, s: Sequent) -> tuple:
        return self.mask(s.left), self.mask(s.right)

    def decode_set(self, m: int) -> frozenset:
        return frozenset(a for i, a in enumerate(self.atoms) if m >> i & 1)

    def decode(self, s: tuple) -> Sequent:
        return Sequent(self.decode_set(s[0]), self.decode_set(s[1]))


def _subsumes(a: tuple, b: tuple) -> bool:
    return not (a[0] & ~b[0]) and not (a[1] & ~b[1])


@dataclass(frozen=True)
class DerivableSet:
    """Fixpoint of saturation over ``universe``.

    ``minimal`` is the subsumption antichain (in discovery order); provenance
    maps every sequent ever accepted to ``(Instance, premise sequents)``.
    """

    universe: tuple
    minimal: tuple
    provenance: dict
    base: Base = field(repr=False)

    def subsumer(self, s: Sequent) -> Optional[Sequent]:
        for m in self.minimal:
            if m.subsumes(s):
                return m
        return None

    def derives(self, s: Sequent) -> bool:
        return self.subsumer(s) is not None

    def __contains__(self, s: Sequent) -> bool:
        return self.derives(s)

    def __len__(self):
        return len(self.minimal)


def saturate(base: Base, extra_atoms: Iterable[Atom] = ()) -> DerivableSet:
    universe = base.atoms() | frozenset(extra_atoms)
    key = universe
    cached = base._cache.get(key)
    if cached is not None:
        return cached
    codec = _Codec(universe)
    insts = base.instances(codec.atoms)
    enc = []
    for inst in insts:
        enc.append((inst, [codec.encode(p) for p in inst.premises], codec.encode(inst.conclusion)))

    # rules indexed by premise position: a minimal sequent M can only usefully
    # fill premise P if it meets P on the matching side, else the result contains M
    by_atom_left = {}
    by_atom_right = {}
    seeds = []
    for ri, (inst, prems, concl) in enumerate(enc):
        if not prems:
            seeds.append((concl, (inst, ())))
            continue
        for pi, (pl, pr) in enumerate(prems):
            for i in range(len(codec.atoms)):
                if pl >> i & 1:
                    by_atom_left.setdefault(i, []).append((ri, pi))
                if pr >> i & 1:
                    by_atom_right.setdefault(i, []).append((ri, pi))

    antichain: dict = {}  # seq -> None, insertion ordered
    provenance: dict = {}
    agenda = deque(seeds)

    def admit(seq, why):
        for m in antichain:
            if _subsumes(m, seq):
                return
        for m in [m for m in antichain if _subsumes(seq, m)]:
            del antichain[m]
        antichain[seq] = None
        if seq not in provenance:
            provenance[seq] = why
        return True

    def useful(m, prem):
        return (m[0] & prem[0]) or (m[1] & prem[1])

    while agenda:
        seq, why = agenda.popleft()
        if not admit(seq, why):
            continue
        # fire every rule with seq in some premise slot, others from the antichain
        slots = set()
        for i in range(len(codec.atoms)):
            if seq[0] >> i & 1:
                slots.update(by_atom_left.get(i, ()))
            if seq[1] >> i & 1:
                slots.update(by_atom_right.get(i, ()))
        for ri, pi in sorted(slots):
            inst, prems, concl = enc[ri]
            choices = []
            for pj, prem in enumerate(prems):
                if pj == pi:
                    choices.append([seq])
                else:
                    choices.append([m for m in antichain if useful(m, prem)])
            for combo in itertools.product(*choices):
                left, right = concl
                for m, prem in zip(combo, prems):
                    left |= m[0] & ~prem[0]
                    right |= m[1] & ~prem[1]
                new = (left, right)
                if any(_subsumes(m, new) for m in antichain):
                    continue
                agenda.append((new, (inst, combo)))

    minimal = tuple(codec.decode(s) for s in antichain)
    prov = {
        codec.decode(s): (inst, tuple(codec.decode(c) for c in combo)) for s, (inst, combo) in provenance.items()
    }
    result = DerivableSet(tuple(codec.atoms), minimal, prov, base)
    base._cache[key] = result
    return result


def derivable(base: Base, s) -> bool:
    if isinstance(s, str):
        s = parse_sequent(s, allow_mapped=True)
    _atomic(s, "query")
    return saturate(base, s.atoms()).derives(s)


# ---------------------------------------------------------------------------
# Derivation trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """A node of an atomic derivation.

    A node with a premise-free rule is an axiom weakened to ``conclusion``;
    otherwise it is a (Mix) application of ``rule`` to ``children``.
    """

    conclusion: Sequent
    rule: Instance
    children: tuple = ()

    @property
    def kind(self) -> str:
        if not self.rule.premises:
            return "axiom"
        return "schema" if self.rule.ground is None else "mix"

    def weaken(self, left=(), right=()) -> "Derivation":
        left, right = frozenset(left), frozenset(right)
        if not left and not right:
            return self
        return Derivation(
            self.conclusion.weaken(left, right), self.rule, tuple(c.weaken(left, right) for c in self.children)
        )

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_text(self, indent: int = 0) -> str:
        lines = ["  " * indent + f"{render(self.conclusion)}    ({self.rule.label()})"]
        lines += [c.to_text(indent + 1) for c in self.children]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rule": self.rule.label(),
            "sequent": render(self.conclusion),
            "children": [c.to_dict() for c in self.children],
        }


def _rebuild(ds: DerivableSet, s: Sequent, memo: dict) -> Derivation:
    if s in memo:
        return memo[s]
    inst, support = ds.provenance[s]
    children = []
    for m, p in zip(support, inst.premises):
        children.append(_rebuild(ds, m, memo).weaken(p.left - m.left, p.right - m.right))
    d = Derivation(s, inst, tuple(children))
    memo[s] = d
    return d


def derivation(base: Base, s) -> Derivation:
    """A derivation of ``s`` reconstructed from saturation provenance."""
    if isinstance(s, str):
        s = parse_sequent(s, allow_mapped=True)
    _atomic(s, "query")
    ds = saturate(base, s.atoms())
    m = ds.subsumer(s)
    if m is None:
        raise NotDerivable(f"not derivable: {render(s)}")
    return _rebuild(ds, m, {}).weaken(s.left - m.left, s.right - m.right)


def check_derivation(d: Derivation, base: Optional[Base] = None) -> None:
    """Raise :class:`BaseError` unless every node obeys the (Axiom/Weakening)
    or (Mix) clause for its rule; with ``base``, the rule must belong to it."""
    allowed = None
    if base is not None:
        allowed = {g.id for g in base.ground} | {s.id for s in base.schemas}
    for node in d.nodes():
        inst, c = node.rule, node.conclusion
        if allowed is not None and inst.source not in allowed:
            raise BaseError(f"rule {inst.source} is not in the base")
        if inst.atom is not None:
            expected = SchemaRule(inst.source).instances([inst.atom])[0]
            if (expected.premises, expected.conclusion) != (inst.premises, inst.conclusion):
                raise BaseError(f"malformed {inst.source} instance")
        if not c.is_atomic:
            raise BaseError(f"non-atomic sequent {render(c)}")
        if len(node.children) != len(inst.premises):
            raise BaseError(f"{inst.label()}: wrong number of children at {render(c)}")
        low_l, low_r = set(inst.conclusion.left), set(inst.conclusion.right)
        up_l, up_r = set(low_l), set(low_r)
        if not inst.premises:
            if not inst.conclusion.subsumes(c):
                raise BaseError(f"{inst.label()}: {render(c)} does not weaken {render(inst.conclusion)}")
            continue
        for child, p in zip(node.children, inst.premises):
            cs = child.conclusion
            if not p.subsumes(cs):
                raise BaseError(f"{inst.label()}: premise {render(cs)} does not match {render(p)}")
            low_l |= cs.left - p.left
            low_r |= cs.right - p.right
            up_l |= cs.left
            up_r |= cs.right
        if not (low_l <= c.left <= up_l and low_r <= c.right <= up_r):
            raise BaseError(f"{inst.label()}: conclusion {render(c)} is not a Mix of its premises")


# ---------------------------------------------------------------------------
# Base files
# ---------------------------------------------------------------------------


def parse_base(text: str) -> Base:
    """Parse the line-oriented base format.

    ``closure: st|hs`` header, ``#`` comments, one rule per line:
    ``premise ; premise |- conclusion``; an axiom is ``|- => p``.
    Optional ``simulation: full|quasi`` and ``scope: <formulas>`` headers
    put the rules on top of the simulation base for that scope; the rules
    may then name proxy atoms as ``@(<formula>)``.
    """
    from .syntax import ParseError, parse_formula_list

    closure = variant = scope = None
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.split(":", 1)[0].strip().lower() if ":" in line and "|-" not in line else None
        if key == "closure":
            closure = line.split(":", 1)[1].strip().lower()
            if closure not in (HS, ST):
                raise ParseError(f"line {lineno}: closure must be 'st' or 'hs'")
            continue
        if key == "simulation":
            variant = line.split(":", 1)[1].strip().lower()
            if variant not in ("full", "quasi"):
                raise ParseError(f"line {lineno}: simulation must be 'full' or 'quasi'")
            continue
        if key == "scope":
            try:
                scope = parse_formula_list(line.split(":", 1)[1])
            except ParseError as e:
                raise ParseError(f"line {lineno}: {e}") from e
            continue
        if "|-" not in line:
            raise ParseError(f"line {lineno}: expected '|-'", line, 0)
        head, concl = line.rsplit("|-", 1)
        try:
            prems = [parse_sequent(p, allow_mapped=True) for p in head.split(";")] if head.strip() else []
            conclusion = parse_sequent(concl, allow_mapped=True)
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from e
        try:
            rules.append(GroundRule(tuple(prems), conclusion))
        except BaseError as e:
            raise ParseError(f"line {lineno}: {e}") from e
    if closure is None:
        raise ParseError("missing 'closure: st' or 'closure: hs' header")
    if (variant is None) != (scope is None):
        raise ParseError("'simulation:' and 'scope:' headers must appear together")
    if variant is not None:
        from .simulation import simulation_base

        return extend(simulation_base(scope, None, variant, closure), rules)
    return make_base(rules, closure)


def format_base(base: Base) -> str:
    lines = [f"closure: {base.closure}"]
    if base.variant is not None and base.mapping is not None:
        from .syntax import render_list

        top = [a for a in base.mapping.scope if not any(a != b and a in _immediate(b) for b in base.mapping.scope)]
        lines.append(f"simulation: {base.variant}")
        lines.append(f"scope: {render_list(top)}")
    lines += [g.text() for g in base.ground]
    return "\n".join(lines) + "\n"


def _immediate(a) -> tuple:
    return (a.left, a.right) if hasattr(a, "left") else ()
