import pytest
from hypothesis import given

from seqbes.syntax import (
    BOT,
    And,
    Atom,
    Imp,
    Or,
    ParseError,
    Sequent,
    degree,
    mapped_name,
    neg,
    parse_formula,
    parse_sequent,
    render,
    subformulas,
)

from conftest import formulas, sequents

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_precedence_and_associativity():
    assert parse_formula("p & q -> r") == Imp(And(p, q), r)
    assert parse_formula("bot") == BOT
    assert parse_formula("p | q | r") == Or(p, Or(q, r))
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse_formula("p & q | r") == Or(And(p, q), r)
    assert parse_formula("~p") == neg(p)
    assert parse_formula("~~p") == Imp(Imp(p, BOT), BOT)


def test_parse_sequent_examples():
    assert parse_sequent("p, p => q") == Sequent.of([p], [q])
    assert parse_sequent("=> p -> p") == Sequent.of([], [Imp(p, p)])
    assert parse_sequent("p & q => q, r") == Sequent.of([And(p, q)], [q, r])
    assert parse_sequent("p =>") == Sequent.of([p], [])
    assert parse_sequent("=>") == Sequent.of()


def test_subformulas_examples():
    assert subformulas({And(q, r)}) == {And(q, r), q, r}
    assert subformulas({p}) == {p}
    f = Imp(p, Or(q, BOT))
    assert subformulas({f}) == {f, p, Or(q, BOT), q, BOT}


def test_degree_examples():
    assert degree(p) == 0
    assert degree(And(p, Imp(q, BOT))) == 3
    assert degree({p, Or(p, q)}) == 1


def test_render_examples():
    assert render(Imp(And(p, q), r)) == "p & q -> r"
    assert render(BOT) == "bot"
    assert render(Sequent.of([p], [q])) == "p => q"
    assert render(Sequent.of([], [p])) == "=> p"
    assert render(Sequent.of([p], [])) == "p =>"
    assert render(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert render(And(Or(p, q), r)) == "(p | q) & r"
    assert render(Or(Or(p, q), r)) == "(p | q) | r"


@pytest.mark.parametrize(
    "text,pos",
    [("p &", 3), ("p => => q", 5), ("(p", 2), ("p $ q", 2), ("p q", 2)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_sequent(text) if "=>" in text else parse_formula(text)
    assert e.value.pos == pos


def test_reserved_prefix():
    with pytest.raises(ParseError):
        parse_formula("@(q & r)")
    proxy = parse_formula("@(q & r)", allow_mapped=True)
    assert proxy == Atom(mapped_name(And(q, r)))
    assert proxy.is_mapped
    # a proxy of an atom is the atom itself
    assert parse_formula("@(q)", allow_mapped=True) == q


@given(formulas)
def test_formula_round_trip(a):
    assert parse_formula(render(a)) == a


@given(sequents)
def test_sequent_round_trip(s):
    assert parse_sequent(render(s)) == s


def test_latex_rendering():
    assert render(Imp(And(p, q), BOT), "latex") == r"p \land q \to \bot"
    assert render(Sequent.of([p], [q]), "latex") == r"p \Rightarrow q"
    assert "p^{q \\land r}" in render(Atom(mapped_name(And(q, r))), "latex")
