"""LaTeX output: formulas in math mode, trees in ``bussproofs`` markup."""

from __future__ import annotations

from .syntax import And, Atom, Bottom, Imp, Or, Sequent, _LEVEL, is_compound, ordered

_OPS = {And: r"\land", Or: r"\lor", Imp: r"\to"}


def _atom(a: Atom) -> str:
    if a.is_mapped:
        return r"p^{" + formula_latex_inner(a.name[2:-1]) + "}"
    name = a.name.replace("_", r"\_")
    return name if len(name) == 1 else r"\mathit{" + name + "}"


def formula_latex_inner(text: str) -> str:
    from .syntax import parse_formula

    return formula_latex(parse_formula(text, allow_mapped=True))


def formula_latex(a) -> str:
    if isinstance(a, Atom):
        return _atom(a)
    if isinstance(a, Bottom):
        return r"\bot"
    level = _LEVEL[type(a)]
    left, right = formula_latex(a.left), formula_latex(a.right)
    if is_compound(a.left) and _LEVEL[type(a.left)] <= level:
        left = f"({left})"
    if is_compound(a.right) and _LEVEL[type(a.right)] < level:
        right = f"({right})"
    return f"{left} {_OPS[type(a)]} {right}"


def sequent_latex(s: Sequent) -> str:
    left = ", ".join(formula_latex(a) for a in ordered(s.left))
    right = ", ".join(formula_latex(a) for a in ordered(s.right))
    return f"{left} \\Rightarrow {right}".strip()


_RULE_NAMES = {
    "init": r"\mathsf{init}", "L&": r"L\land", "R&": r"R\land", "L|": r"L\lor", "R|": r"R\lor",
    "L->": r"L\to", "R->": r"R\to", "Lbot": r"L\bot", "Rbot": r"R\bot", "Cut": r"\mathsf{Cut}",
    "Q&1*": r"Q\land_1^*", "Q&2*": r"Q\land_2^*", "Q|*": r"Q\lor^*", "Q->*": r"Q\to^*", "Qbot*": r"Q\bot^*",
}

_INFER = {0: r"\AxiomC", 1: r"\UnaryInfC", 2: r"\BinaryInfC", 3: r"\TrinaryInfC"}


def _tree_lines(conclusion: Sequent, label: str, children: list, out: list) -> None:
    for c in children:
        c(out)
    n = len(children)
    out.append(f"\\RightLabel{{${label}$}}")
    if n == 0:
        # bussproofs axioms take no label; draw a line over an empty axiom instead
        out.append(r"\AxiomC{}")
        out.append(f"\\UnaryInfC{{${sequent_latex(conclusion)}$}}")
    elif n in _INFER:
        out.append(f"{_INFER[n]}{{${sequent_latex(conclusion)}$}}")
    else:
        raise ValueError("bussproofs supports at most three premises per inference")


def _proof_emitter(p):
    def emit(out):
        label = _RULE_NAMES.get(p.rule.value, p.rule.value)
        _tree_lines(p.conclusion, label, [_proof_emitter(c) for c in p.premises], out)

    return emit


def _derivation_emitter(d):
    def emit(out):
        label = d.rule.label().replace("_", r"\_").replace("&", r"\land").replace("|", r"\lor").replace("->", r"\to")
        _tree_lines(d.conclusion, r"\text{" + label.split(" ")[0] + "}", [_derivation_emitter(c) for c in d.children], out)

    return emit


def to_latex(x) -> str:
    """Formula or sequent in math mode; proofs and derivations as a ``prooftree``."""
    from .bases import Derivation
    from .clp import Proof

    if isinstance(x, Sequent):
        return sequent_latex(x)
    if isinstance(x, Proof):
        emit = _proof_emitter(x)
    elif isinstance(x, Derivation):
        emit = _derivation_emitter(x)
    else:
        return formula_latex(x)
    lines = [r"\begin{prooftree}"]
    emit(lines)
    lines.append(r"\end{prooftree}")
    return "\n".join(lines)
