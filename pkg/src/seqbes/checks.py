"""Executable property suites.

Each suite returns a :class:`CheckResult`; all randomness comes from a
``random.Random`` seeded by the caller, so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from .bases import (
    HS,
    ST,
    GroundRule,
    axiom,
    derivable,
    extend,
    make_base,
    saturate,
)
from .bruteforce import all_sequents, brute_force_derivable
from .clp import Q_RULES, Provable, check_proof, prove, truth_table_valid
from .simulation import (
    FULL,
    QUASI,
    atomic_mapping,
    extract_proof,
    prop6_counterexample,
    simulation_base,
)
from .support import hypothesis_extension
from .syntax import BOT, And, Atom, Bottom, Imp, Or, Sequent, render, subformulas

DEFAULT_SEED = 20240517

ATOMS4 = tuple(Atom(x) for x in "pqrs")
_OPS = (And, Or, Imp)


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = "".join(f", {k}={v}" for k, v in self.notes.items())
        return f"{mark}  {self.name}: {self.cases} cases, {len(self.failures)} failures, {self.seconds:.2f}s{extra}"


def _timed(name: str, fn: Callable[[], tuple]) -> CheckResult:
    t0 = time.perf_counter()
    cases, failures, notes = fn()
    return CheckResult(name, not failures, cases, failures, time.perf_counter() - t0, notes)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def random_formula(rng: random.Random, atoms, deg: int, bottom: bool = True):
    """A random formula of exactly ``deg`` connectives (``bot`` counts one)."""
    if deg == 0:
        return rng.choice(atoms)
    if deg == 1 and bottom and rng.random() < 0.2:
        return BOT
    k = rng.randint(0, deg - 1)
    op = rng.choice(_OPS)
    return op(random_formula(rng, atoms, k, bottom), random_formula(rng, atoms, deg - 1 - k, bottom))


def _composition(rng: random.Random, total: int, parts: int) -> list:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def random_sequent(rng: random.Random, atoms=ATOMS4, max_degree: int = 5, max_side: int = 2) -> Sequent:
    nl = rng.randint(0, max_side)
    nr = rng.randint(0 if nl else 1, max_side)
    shares = _composition(rng, rng.randint(0, max_degree), nl + nr)
    forms = [random_formula(rng, atoms, d) for d in shares]
    return Sequent.of(forms[:nl], forms[nl:])


def formulas_up_to(atoms, max_degree: int) -> dict:
    """All formulas by exact degree, with ``bot`` as a degree-one leaf."""
    by = {0: list(atoms)}
    for d in range(1, max_degree + 1):
        level = [BOT] if d == 1 else []
        for k in range(d):
            for op in _OPS:
                for a in by[k]:
                    for b in by[d - 1 - k]:
                        level.append(op(a, b))
        by[d] = level
    return by


def exhaustive_sequents(atoms=(Atom("p"), Atom("q")), max_degree: int = 2, max_side: int = 2) -> list:
    """Every sequent with at most ``max_side`` formulas a side and total degree at most ``max_degree``."""
    by = formulas_up_to(atoms, max_degree)
    pool = [(a, d) for d, fs in by.items() for a in fs]
    sides = []
    for n in range(max_side + 1):
        for combo in itertools.combinations(pool, n):
            sides.append((frozenset(a for a, _ in combo), sum(d for _, d in combo)))
    out = []
    for left, dl in sides:
        for right, dr in sides:
            if dl + dr <= max_degree:
                out.append(Sequent(left, right))
    return out


def random_atomic_sequent(rng, atoms, max_side: int = 2, nonempty: bool = False) -> Sequent:
    k = min(max_side, len(atoms))
    while True:
        s = Sequent.of(rng.sample(atoms, rng.randint(0, k)), rng.sample(atoms, rng.randint(0, k)))
        if not nonempty or s.left or s.right:
            return s


def random_rule(rng, atoms, max_premises: int = 2) -> GroundRule:
    prems = tuple(random_atomic_sequent(rng, atoms) for _ in range(rng.randint(0, max_premises)))
    return GroundRule(prems, random_atomic_sequent(rng, atoms, nonempty=not prems))


def random_base(rng, atoms, max_rules: int = 6, closure: Optional[str] = None):
    closure = closure or rng.choice((HS, ST))
    return make_base([random_rule(rng, atoms) for _ in range(rng.randint(0, max_rules))], closure)


def valid_corpus(rng: random.Random, n: int, atoms=ATOMS4, max_degree: int = 4) -> list:
    """``n`` distinct valid sequents (rejection sampling)."""
    seen, out = set(), []
    while len(out) < n:
        s = random_sequent(rng, atoms, max_degree)
        if s not in seen and prove(s):
            seen.add(s)
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def check_oracle_equivalence(samples: int = 10_000, seed: int = DEFAULT_SEED) -> CheckResult:
    def run():
        rng = random.Random(seed)
        failures = []
        exhaustive = exhaustive_sequents()
        randoms = [random_sequent(rng, ATOMS4, 5) for _ in range(samples)]
        for s in exhaustive + randoms:
            r = prove(s)
            if bool(r) != truth_table_valid(s):
                failures.append(render(s))
            elif isinstance(r, Provable):
                check_proof(r.proof)
        return len(exhaustive) + len(randoms), failures, {"exhaustive": len(exhaustive)}

    return _timed("oracle equivalence (prover vs truth tables)", run)


def check_pipeline(variant: str, samples: int = 500, seed: int = DEFAULT_SEED) -> CheckResult:
    def run():
        rng = random.Random(seed)
        failures = []
        q_seen = set()
        for s in valid_corpus(rng, samples):
            try:
                rep = extract_proof(s.left, s.right, variant)
                check_proof(rep.final)
                check_proof(rep.stage_pi_dprime, allow_cut=True, allow_q=variant == QUASI)
                if rep.final.conclusion != s or rep.final.has_cut():
                    raise AssertionError("wrong end-sequent or residual cut")
                if rep.stage_rewritten is not None:
                    check_proof(rep.stage_rewritten, allow_cut=True)
                q_seen |= rep.q_rules_used()
            except Exception as e:  # every failure is reported, not raised
                failures.append(f"{render(s)}: {e}")
        notes = {}
        if variant == QUASI:
            missing = sorted(r.value for r in Q_RULES - q_seen)
            notes["q_kinds"] = len(q_seen)
            if missing:
                failures.append(f"Q* kinds never exercised: {', '.join(missing)}")
        return samples, failures, notes

    return _timed(f"extraction pipeline ({variant})", run)


def check_prop6() -> CheckResult:
    def run():
        rep = prop6_counterexample()
        return len(rep.facts), [str(f) for f in rep.facts if not f.ok], {}

    return _timed("cut-free counterexample facts", run)


def _shadow_failures(base, m, scope, theta) -> list:
    """Compare each connective's clause with derivability at the atomic level."""
    out = []
    th = frozenset(theta)

    def d(left, right):
        return derivable(base, Sequent(frozenset(left), frozenset(right) | th))

    for c in scope:
        if isinstance(c, Atom):
            continue
        pc = m(c)
        lhs = d((), [pc])
        if isinstance(c, Bottom):
            rhs = d((), ())
        elif isinstance(c, And):
            rhs = d((), [m(c.left)]) and d((), [m(c.right)])
        elif isinstance(c, Or):
            rhs = d((), [m(c.left), m(c.right)])
        else:
            rhs = d([m(c.left)], [m(c.right)])
        if lhs != rhs:
            out.append((c, lhs, rhs))
    return out


def check_atomic_shadows(samples: int = 1_000, seed: int = DEFAULT_SEED) -> CheckResult:
    def run():
        rng = random.Random(seed)
        atoms = ATOMS4[:3]
        failures = []
        for i in range(samples):
            while True:
                sigma = [random_formula(rng, atoms, rng.randint(1, 3)) for _ in range(rng.randint(1, 2))]
                scope = subformulas(sigma)
                if len(scope) <= 6:
                    break
            m = atomic_mapping(sigma)
            universe = sorted(m.image(scope), key=lambda a: a.name)
            axioms = [axiom(random_atomic_sequent(rng, universe, nonempty=True)) for _ in range(rng.randint(0, 3))]
            theta = rng.sample(universe, rng.randint(0, min(3, len(universe))))
            for variant in (FULL, QUASI):
                base = extend(simulation_base(sigma, m, variant), axioms)
                for c, lhs, rhs in _shadow_failures(base, m, scope, theta):
                    failures.append(f"#{i} {variant}: {render(c)} with {[g.text() for g in axioms]} theta={theta}: {lhs} vs {rhs}")
        # the cut-free full base must break the conjunction shadow
        q, r = Atom("q"), Atom("r")
        qr = And(q, r)
        m = atomic_mapping([qr])
        base = extend(simulation_base([qr], m, FULL, HS), [axiom(Sequent.of([], [m(qr)]))])
        broken = _shadow_failures(base, m, [qr], ())
        if [c for c, _, _ in broken] != [qr]:
            failures.append("conjunction shadow unexpectedly holds on the cut-free full base")
        return samples * 2 + 1, failures, {}

    return _timed("atomic shadows of the connective clauses", run)


def check_witness_property(samples: int = 1_000, seed: int = DEFAULT_SEED) -> CheckResult:
    def run():
        rng = random.Random(seed)
        atoms = [Atom(x) for x in "abcde"]
        failures = []
        for i in range(samples):
            universe = atoms[: rng.randint(1, 5)]
            base = random_base(rng, universe, 6, HS if i % 2 else ST)
            gamma = frozenset(rng.sample(universe, rng.randint(0, min(2, len(universe)))))
            delta = frozenset(rng.sample(universe, rng.randint(0, min(2, len(universe)))))
            hyp = derivable(base, Sequent(gamma, delta))
            cat = derivable(hypothesis_extension(base, gamma), Sequent(frozenset(), delta))
            if not hyp and cat:
                failures.append(f"#{i} {base.closure}: |/- {render(Sequent(gamma, delta))} but witness derives => {render(Sequent(frozenset(), delta))}")
            if base.closure == ST and hyp and not cat:
                failures.append(f"#{i} st: |- {render(Sequent(gamma, delta))} but witness fails")
        return samples, failures, {}

    return _timed("hypothetical-to-categorical witness", run)


def check_monotonicity(samples: int = 1_000, seed: int = DEFAULT_SEED) -> CheckResult:
    def run():
        rng = random.Random(seed)
        atoms = [Atom(x) for x in "abcd"]
        failures = []
        for i in range(samples):
            base = random_base(rng, atoms, 4)
            ext = extend(base, [random_rule(rng, atoms) for _ in range(rng.randint(1, 3))])
            universe = atoms
            small, big = saturate(base, universe), saturate(ext, universe)
            for s in small.minimal:
                if not big.derives(s):
                    failures.append(f"#{i}: {render(s)} lost in the extension")
        return samples, failures, {}

    return _timed("monotonicity under extension", run)


def tiny_grammar(atoms) -> list:
    """Axioms and one-premise rules over sequents with at most one atom."""
    tiny = [Sequent.of()] + [Sequent.of([], [a]) for a in atoms] + [Sequent.of([a], []) for a in atoms]
    return [GroundRule((), s) for s in tiny] + [GroundRule((p,), c) for p in tiny for c in tiny]


def _canonical(rules: tuple, atoms, perms) -> bool:
    """True when ``rules`` is the least member of its atom-renaming orbit."""
    key = tuple(sorted(g.id for g in rules))
    for perm in perms:
        ren = dict(zip(atoms, perm))

        def rn(s):
            return Sequent(frozenset(ren[a] for a in s.left), frozenset(ren[a] for a in s.right))

        other = tuple(sorted(GroundRule(tuple(rn(p) for p in g.premises), rn(g.conclusion)).id for g in rules))
        if other < key:
            return False
    return True


def check_bruteforce(max_rules: int = 3) -> CheckResult:
    def run():
        atoms = [Atom(x) for x in "pqr"]
        grammar = tiny_grammar(atoms)
        perms = list(itertools.permutations(atoms))
        sequents = all_sequents(atoms)
        failures, cases = [], 0
        for k in range(max_rules + 1):
            for rules in itertools.combinations(grammar, k):
                if not _canonical(rules, atoms, perms):
                    continue
                for closure in (HS, ST):
                    base = make_base(rules, closure)
                    naive = brute_force_derivable(base, atoms)
                    ds = saturate(base, atoms)
                    cases += 1
                    for s in sequents:
                        if ds.derives(s) != (s in naive):
                            failures.append(f"{closure} {[g.text() for g in rules]}: {render(s)}")
        return cases, failures, {"grammar_rules": len(grammar)}

    return _timed("saturation vs naive enumeration", run)


def check_cut_divergence() -> CheckResult:
    def run():
        rules = [axiom("p => q"), axiom("q => r")]
        st = derivable(make_base(rules, ST), "p => r")
        hs = derivable(make_base(rules, HS), "p => r")
        failures = [] if (st, hs) == (True, False) else [f"st={st} hs={hs}"]
        return 2, failures, {"st": st, "hs": hs}

    return _timed("atomic cut changes derivability", run)


def run_all(samples: Optional[int] = None, seed: int = DEFAULT_SEED) -> list:
    """Every suite; ``samples`` overrides each sampled suite's size.

    Below 1000 samples the exhaustive comparison stops at two-rule bases.
    """

    def n(default):
        return default if samples is None else samples

    small = samples is not None and samples < 1000

    return [
        check_oracle_equivalence(n(10_000), seed),
        check_pipeline(FULL, n(500), seed),
        check_pipeline(QUASI, n(500), seed),
        check_prop6(),
        check_atomic_shadows(n(1_000), seed),
        check_witness_property(n(1_000), seed),
        check_monotonicity(n(1_000), seed),
        check_bruteforce(2 if small else 3),
        check_cut_divergence(),
    ]
