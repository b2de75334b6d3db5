import random

import pytest
from hypothesis import given, strategies as st

from seqbes.bases import HS, ST, ST_BASE, BaseError, axiom, derivable, extend, make_base, rule
from seqbes.checks import random_base, random_rule, valid_corpus
from seqbes.simulation import FULL, QUASI, ScopeError, atomic_mapping, simulation_base
from seqbes.support import (
    Judgment,
    NotSupported,
    Obligation,
    Supported,
    Unknown,
    hypothesis_extension,
    parse_judgment,
    support_atomic,
    support_exact,
    support_oracle,
    support_refute,
    unfold,
    valid,
)
from seqbes.syntax import And, Atom, Sequent, parse_formula

p, q, r = Atom("p"), Atom("q"), Atom("r")
F = parse_formula
J = parse_judgment
CHAIN = [axiom("p => q"), axiom("q => r")]


def prop_setup(closure):
    qr = And(q, r)
    m = atomic_mapping([qr])
    base = extend(simulation_base([qr], m, FULL, closure), [axiom(Sequent.of([], [m(qr)]))])
    return base, m


def test_unfold_examples():
    assert unfold(J("|= p & q")) == (Obligation(frozenset(), frozenset({p})), Obligation(frozenset(), frozenset({q})))
    assert unfold(J("|= p | q, bot")) == (Obligation(frozenset(), frozenset({p, q})),)
    assert unfold(J("|= p -> q")) == (Obligation(frozenset({p}), frozenset({q})),)


def test_unfold_carries_antecedents_and_nests():
    obs = unfold(J("r |= p -> (q & s)"))
    assert {(frozenset(o.hypotheses), frozenset(o.succedents)) for o in obs} == {
        (frozenset({r, p}), frozenset({q})),
        (frozenset({r, p}), frozenset({Atom("s")})),
    }


def test_duplicates_collapse():
    assert J("p, p |= q, q") == J("p |= q")


def test_support_atomic_examples():
    assert isinstance(support_atomic(ST_BASE, {p}, {p}), Supported)
    assert isinstance(support_atomic(ST_BASE, set(), {p}), NotSupported)
    assert isinstance(support_atomic(make_base(CHAIN, ST), {p}, {r}), Supported)
    with pytest.raises(BaseError):
        support_atomic(ST_BASE, {F("p & q")}, {p})


def test_support_atomic_cut_free_is_one_sided():
    v = support_atomic(make_base(CHAIN, HS), {p}, {r})
    assert isinstance(v, NotSupported) and v.recheck()
    # the hypothesis itself is among the succedents
    assert isinstance(support_atomic(make_base([], HS), {p}, {p, q}), Supported)
    # derivable hypothetically, yet the witness extension still fails
    base, m = prop_setup(HS)
    v = support_atomic(base, {m(And(q, r))}, {q})
    assert isinstance(v, NotSupported) and v.recheck()


def test_support_atomic_cut_free_unknown():
    # a two-hypothesis rule: the witness derives the goal, the easy cases do not apply
    base = make_base([rule(["=> p", "=> q"], "=> r")], HS)
    v = support_atomic(base, {p, q}, {r})
    assert isinstance(v, Unknown)


def test_support_oracle_examples():
    base, m = prop_setup(ST)
    assert isinstance(support_oracle(base, [], [F("q & r")]), Supported)
    hs, _ = prop_setup(HS)
    v = support_oracle(hs, [], [F("q & r")])
    assert isinstance(v, NotSupported) and v.recheck()
    plain = simulation_base([F("q & r")], m, FULL)
    assert isinstance(support_oracle(plain, [F("q & r")], [q]), Supported)


def test_support_oracle_scope_and_unknown():
    base, _ = prop_setup(ST)
    with pytest.raises(ScopeError):
        support_oracle(base, [F("p -> q")], [q])
    quasi = simulation_base([F("q -> r")], None, QUASI)
    assert isinstance(support_oracle(quasi, [q], [F("q -> r")]), Unknown)
    assert isinstance(support_oracle(quasi, [], [F("q -> r")]), NotSupported)


def test_support_oracle_full_base_decides_validity():
    for s in valid_corpus(random.Random(3), 25, max_degree=3):
        base = simulation_base(s.left | s.right)
        assert isinstance(support_oracle(base, s.left, s.right), Supported)
    base = simulation_base([F("p -> q"), q])
    v = support_oracle(base, [F("p -> q")], [q])
    assert isinstance(v, NotSupported) and v.recheck()


def test_support_refute_examples():
    v = support_refute(ST_BASE, J("|= p"), 2)
    assert isinstance(v, NotSupported) and v.base.ground == ()
    assert isinstance(support_refute(ST_BASE, J("|= p -> p"), 2), Unknown)
    hs, _ = prop_setup(HS)
    v = support_refute(hs, J("|= q"), 0)
    assert isinstance(v, NotSupported) and v.recheck()


def test_support_refute_needs_atomic_hypotheses():
    assert isinstance(support_refute(ST_BASE, J("|= (p -> q) -> q"), 2), Unknown)


def test_support_refute_finds_a_context():
    # p |= q fails once p is asserted with no context
    v = support_refute(ST_BASE, J("p |= q"), 0)
    assert isinstance(v, NotSupported) and v.recheck() and v.hypotheses == (p,)


def test_valid_examples():
    assert valid([F("q & r")], [q]).valid
    assert valid([], [F("p | (p -> bot)")], "cut-free").valid
    res = valid([], [p])
    assert not res.valid and res.certificate == {p: False}


def test_support_exact_mode():
    assert isinstance(support_exact(ST_BASE, J("p |= p")), Supported)
    assert isinstance(support_exact(ST_BASE, J("|= p -> p")), Unknown)
    assert isinstance(support_exact(extend(ST_BASE, [axiom("=> p")]), J("|= p | q, bot")), Supported)


def test_hypothesis_axioms_one_per_atom():
    a, b = Atom("a"), Atom("b")
    # a single axiom '=> a, b' would not let '=> a' through
    base = ST_BASE
    assert derivable(base, Sequent.of([a, b], [a]))
    assert not derivable(extend(base, [axiom(Sequent.of([], [a, b]))]), Sequent.of([], [a]))
    assert derivable(hypothesis_extension(base, [a, b]), Sequent.of([], [a]))
    # and for no hypotheses, an empty axiom '=>' would derive everything
    assert derivable(extend(base, [axiom(Sequent.of())]), Sequent.of([], [p]))
    assert not derivable(hypothesis_extension(base, []), Sequent.of([], [p]))


atom_list = [p, q, r]


@given(st.integers(0, 10**6), st.sampled_from(atom_list))
def test_right_weakening(seed, extra):
    rng = random.Random(seed)
    base = random_base(rng, atom_list, 4)
    delta = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    if isinstance(support_atomic(base, (), delta), Supported):
        assert isinstance(support_atomic(base, (), delta | {extra}), Supported)


@given(st.integers(0, 10**6))
def test_verdicts_monotone(seed):
    rng = random.Random(seed)
    base = random_base(rng, atom_list, 4)
    ext = extend(base, [random_rule(rng, atom_list) for _ in range(2)])
    gamma = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    delta = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    if isinstance(support_atomic(base, gamma, delta), Supported):
        assert isinstance(support_atomic(ext, gamma, delta), Supported)
    if isinstance(support_exact(base, Judgment(frozenset(), delta)), Supported):
        assert isinstance(support_exact(ext, Judgment(frozenset(), delta)), Supported)


@given(st.integers(0, 10**6))
def test_not_supported_witnesses_recheck(seed):
    rng = random.Random(seed)
    base = random_base(rng, atom_list, 4)
    gamma = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    delta = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    v = support_atomic(base, gamma, delta)
    if isinstance(v, NotSupported):
        assert v.recheck()
    w = support_refute(base, Judgment(gamma, delta), 1)
    assert not isinstance(w, Supported)
    if isinstance(w, NotSupported):
        assert w.recheck()
        # exact verdicts never contradict a checked refutation
        assert not isinstance(v, Supported)


@given(st.integers(0, 10**6))
def test_oracle_agrees_with_atomic(seed):
    rng = random.Random(seed)
    base = extend(simulation_base([F("p & q"), r]), [random_rule(rng, atom_list, 1)])
    gamma = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    delta = frozenset(rng.sample(atom_list, rng.randint(0, 2)))
    assert type(support_oracle(base, gamma, delta)) is type(support_atomic(base, gamma, delta))


def test_refuter_is_sound_on_valid_sequents():
    for s in valid_corpus(random.Random(11), 40, max_degree=3):
        j = Judgment(s.left, s.right)
        assert not isinstance(support_refute(ST_BASE, j, 1), NotSupported)


@given(st.integers(0, 10**6))
def test_oracle_invariant_under_mapped_contexts(seed):
    # replacing a proxy atom in the succedent by its formula keeps the verdict
    rng = random.Random(seed)
    sigma = [F("p & q"), F("q -> r"), F("p | r")]
    m = atomic_mapping(sigma)
    universe = sorted(m.inverse, key=lambda a: a.name)
    extra = [axiom(Sequent.of(rng.sample(universe, rng.randint(0, 1)), rng.sample(universe, rng.randint(1, 2))))]
    base = extend(simulation_base(sigma, m, FULL), extra)
    c = rng.choice(sigma)
    rest = rng.sample(universe, rng.randint(0, 2))
    with_proxy = support_oracle(base, [], [m(c), *rest])
    with_formula = support_oracle(base, [], [c, *rest])
    assert type(with_proxy) is type(with_formula)
