import random

import pytest
from hypothesis import given, strategies as st

from seqbes.bases import (
    ACUT,
    AINIT,
    HS,
    HS_BASE,
    ST,
    ST_BASE,
    BaseError,
    NotDerivable,
    axiom,
    check_derivation,
    derivable,
    derivation,
    extend,
    format_base,
    make_base,
    parse_base,
    rule,
    saturate,
)
from seqbes.bruteforce import all_sequents, brute_force_derivable
from seqbes.checks import random_base, random_rule
from seqbes.syntax import Atom, ParseError, parse_sequent

from conftest import atom_sets

p, q, r = Atom("p"), Atom("q"), Atom("r")
S = lambda t: parse_sequent(t, allow_mapped=True)  # noqa: E731
CHAIN = [axiom("p => q"), axiom("q => r")]


def test_make_base_closures():
    assert [s.tag for s in ST_BASE.schemas] == [AINIT, ACUT]
    assert [s.tag for s in HS_BASE.schemas] == [AINIT]
    assert derivable(make_base([axiom("=> p")], HS), "=> p")
    with pytest.raises(BaseError):
        make_base([], "xx")


def test_non_atomic_rules_rejected():
    with pytest.raises(BaseError):
        axiom("=> p & q")


def test_extend_examples():
    b = extend(ST_BASE, [axiom("=> p")])
    assert derivable(b, "=> p")
    assert extend(b, []) is b
    c = extend(b, [axiom("q =>")])
    assert c.is_extension_of(b) and c.is_extension_of(ST_BASE)


def test_saturate_examples():
    assert saturate(ST_BASE, {p}).minimal == (S("p => p"),)
    hs = saturate(make_base(CHAIN, HS), {p, q, r})
    assert set(hs.minimal) == {S("p => p"), S("q => q"), S("r => r"), S("p => q"), S("q => r")}
    st_ = saturate(make_base(CHAIN, ST), {p, q, r})
    assert set(st_.minimal) == set(hs.minimal) | {S("p => r")}


def test_derivable_examples():
    assert derivable(ST_BASE, "r, p => p, s")
    assert not derivable(ST_BASE, "=> p")
    assert derivable(make_base(CHAIN, ST), "p => r")
    assert not derivable(make_base(CHAIN, HS), "p => r")


def test_derivation_examples():
    d = derivation(ST_BASE, "p => p")
    assert d.kind == "axiom" and d.rule.source == AINIT and d.children == ()

    b = make_base([axiom("=> p"), rule(["=> p"], "=> q")], HS)
    d = derivation(b, "=> q")
    assert d.kind == "mix" and [c.conclusion for c in d.children] == [S("=> p")]
    check_derivation(d, b)

    b = make_base(CHAIN, ST)
    d = derivation(b, "p => r")
    assert d.rule.source == ACUT and d.rule.atom == q
    assert [c.kind for c in d.children] == ["axiom", "axiom"]
    check_derivation(d, b)

    with pytest.raises(NotDerivable):
        derivation(make_base(CHAIN, HS), "p => r")


def test_derivation_weakens_to_the_query():
    b = make_base(CHAIN, ST)
    d = derivation(b, "s, p => r, t")
    assert d.conclusion == S("s, p => r, t")
    check_derivation(d, b)


def test_checker_rejects_foreign_rules():
    d = derivation(make_base(CHAIN, ST), "p => r")
    with pytest.raises(BaseError):
        check_derivation(d, ST_BASE)


@given(st.integers(0, 10**6), atom_sets, atom_sets)
def test_weakening_closure(seed, extra_l, extra_r):
    rng = random.Random(seed)
    atoms = [p, q, r, Atom("s")]
    base = random_base(rng, atoms, 4)
    ds = saturate(base, atoms)
    for m in ds.minimal:
        w = m.weaken(extra_l, extra_r)
        assert derivable(base, w)
        check_derivation(derivation(base, w), base)


@given(st.integers(0, 10**6))
def test_every_minimal_sequent_has_a_checked_derivation(seed):
    rng = random.Random(seed)
    atoms = [p, q, r]
    base = random_base(rng, atoms, 5)
    ds = saturate(base, atoms)
    for m in ds.minimal:
        d = derivation(base, m)
        assert d.conclusion == m
        check_derivation(d, base)


@given(st.integers(0, 10**6))
def test_monotone_under_extension(seed):
    rng = random.Random(seed)
    atoms = [p, q, r]
    base = random_base(rng, atoms, 3)
    ext = extend(base, [random_rule(rng, atoms)])
    big = saturate(ext, atoms)
    assert all(big.derives(m) for m in saturate(base, atoms).minimal)


@given(st.integers(0, 10**6))
def test_agrees_with_naive_enumeration(seed):
    rng = random.Random(seed)
    atoms = [p, q]
    base = random_base(rng, atoms, 3)
    naive = brute_force_derivable(base, atoms)
    ds = saturate(base, atoms)
    for s in all_sequents(atoms):
        assert ds.derives(s) == (s in naive)


def test_base_file_round_trip():
    text = "# two axioms\nclosure: hs\n|- p => q\n|- q => r\n=> p ; q => |- => r  # a rule\n"
    b = parse_base(text)
    assert b.closure == HS and len(b.ground) == 3
    again = parse_base(format_base(b))
    assert again.ground == b.ground and again.closure == b.closure


@pytest.mark.parametrize(
    "text",
    ["|- => p\n", "closure: maybe\n", "closure: st\np => q\n", "closure: st\n|- => p &\n", "closure: st\n|- => p & q\n"],
)
def test_base_file_errors(text):
    with pytest.raises(ParseError):
        parse_base(text)


def test_simulation_headers():
    b = parse_base("closure: hs\nsimulation: full\nscope: q & r\n|- => @(q & r)\n")
    assert b.variant == "full" and b.mapping is not None
    assert derivable(b, "@(q & r) => q") and not derivable(b, "=> q")
    with pytest.raises(ParseError):
        parse_base("closure: hs\nsimulation: full\n")
