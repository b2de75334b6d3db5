import pytest
from hypothesis import given

from seqbes.checks import formulas_up_to
from seqbes.clp import (
    Proof,
    ProofError,
    Provable,
    Refutable,
    Rule,
    check_proof,
    eliminate_cuts,
    falsifies,
    is_proof,
    prove,
    truth_table_valid,
)
from seqbes.syntax import And, Atom, Imp, Sequent, parse_formula, parse_sequent

from conftest import atom_sets, sequents, small_sequents

p, q, r = Atom("p"), Atom("q"), Atom("r")
S = parse_sequent


def test_checker_examples():
    check_proof(Proof(S("p, q => p"), Rule.INIT, (), p))
    ident = Proof(S("p => p"), Rule.INIT, (), p)
    check_proof(Proof(S("p => p & p"), Rule.R_AND, (ident, ident), And(p, p)))
    bad = Proof(S("=> p -> q"), Rule.R_IMP, (Proof(S("q, p => q"), Rule.INIT, (), q),), Imp(p, q))
    with pytest.raises(ProofError) as e:
        check_proof(bad)
    assert "antecedent" in str(e.value)
    assert e.value.path == ()


def test_checker_names_the_offending_node():
    leaf = Proof(S("p => q"), Rule.INIT, (), p)
    root = Proof(S("p => q | r"), Rule.R_OR, (Proof(S("p => q, r"), Rule.INIT, (), p),), parse_formula("q | r"))
    with pytest.raises(ProofError) as e:
        check_proof(root)
    assert e.value.path == (0,)
    with pytest.raises(ProofError):
        check_proof(leaf)


def test_cut_and_placeholders_need_flags():
    left = Proof(S("q & r => q"), Rule.L_AND, (Proof(S("q, r => q"), Rule.INIT, (), q),), And(q, r))
    cut = Proof(S("q & r => q"), Rule.CUT, (left, Proof(S("q => q"), Rule.INIT, (), q)), q)
    assert not is_proof(cut)
    assert is_proof(cut, allow_cut=True)
    out = eliminate_cuts(cut)
    check_proof(out)
    assert out.conclusion == S("q & r => q")


def test_eliminate_cuts_identity_on_cut_free():
    pf = prove(S("=> p -> p")).proof
    assert eliminate_cuts(pf) is pf


def test_eliminate_cuts_rejects_broken_input():
    bogus = Proof(S("=> q"), Rule.CUT, (Proof(S("=> p"), Rule.INIT, (), p), Proof(S("p => q"), Rule.INIT, (), p)), p)
    with pytest.raises(ProofError):
        eliminate_cuts(bogus)


def test_prove_examples():
    assert isinstance(prove(S("q & r => q")), Provable)
    peirce = prove(S("=> ((p -> q) -> p) -> p"))
    assert isinstance(peirce, Provable)
    check_proof(peirce.proof)
    ref = prove(S("=> p | q"))
    assert isinstance(ref, Refutable)
    assert ref.valuation == {p: False, q: False}


def test_truth_table_examples():
    assert truth_table_valid(S("p => p"))
    assert not truth_table_valid(S("=> bot"))
    assert truth_table_valid(S("p -> q, p => q"))


def test_exhaustive_single_formula_three_atoms():
    # every formula of degree <= 3 over three atoms, as => A and A =>
    by = formulas_up_to([p, q, r], 3)
    n = 0
    for fs in by.values():
        for a in fs:
            for s in (Sequent.of([], [a]), Sequent.of([a], [])):
                assert bool(prove(s)) == truth_table_valid(s), s
                n += 1
    assert n == 2 * sum(len(v) for v in by.values())


@given(small_sequents)
def test_decision_agrees_with_truth_tables(s):
    res = prove(s)
    assert bool(res) == truth_table_valid(s)
    if isinstance(res, Provable):
        check_proof(res.proof)
        assert res.proof.conclusion == s
    else:
        assert falsifies(res.valuation, s)


@given(sequents, atom_sets, atom_sets)
def test_uniform_weakening_keeps_proofs_legal(s, extra_l, extra_r):
    res = prove(s)
    if res:
        w = res.proof.weaken(extra_l, extra_r)
        check_proof(w)
        assert w.conclusion == s.weaken(extra_l, extra_r)


@given(sequents)
def test_json_round_trip(s):
    res = prove(s)
    if res:
        assert Proof.from_json(res.proof.to_json()) == res.proof
