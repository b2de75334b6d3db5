"""Formulas, sequents, and their text syntax.

Grammar (``->`` loosest and right-associative, then ``|``, then ``&``)::

    formula := imp
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unit ("&" unit)*
    unit    := atom | "bot" | "~" unit | "(" formula ")"
    atom    := [A-Za-z_][A-Za-z0-9_']*

``~A`` is sugar for ``A -> bot``. Binary ``|`` and ``&`` chains associate to
the right, so ``p | q | r`` is ``Or(p, Or(q, r))``.

Atoms whose name starts with ``@`` are reserved for proxy atoms produced by
an atomic mapping; the user-level parser rejects them unless ``allow_mapped``
is set, in which case ``@(<formula>)`` denotes the proxy of ``<formula>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

MAPPED_PREFIX = "@"


class ParseError(ValueError):
    """Raised on malformed input; ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" if text else message)


# ---------------------------------------------------------------------------
# Formula data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom name must be non-empty")

    @property
    def is_mapped(self) -> bool:
        return self.name.startswith(MAPPED_PREFIX)

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, slots=True)
class Bottom:
    def __str__(self):
        return "bot"

    def __repr__(self):
        return "Bottom()"


# hashing recomputes over the whole tree otherwise; the prover hashes a lot
@dataclass(frozen=True, slots=True)
class _Binary:
    left: "Formula"
    right: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self).__name__, self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self)


class And(_Binary):
    __slots__ = ()


class Or(_Binary):
    __slots__ = ()


class Imp(_Binary):
    __slots__ = ()


Formula = Union[Atom, Bottom, And, Or, Imp]
BOT = Bottom()

_SYMBOL = {And: "&", Or: "|", Imp: "->"}
# binding strength: higher binds tighter
_LEVEL = {Imp: 1, Or: 2, And: 3}


def neg(a: Formula) -> Imp:
    return Imp(a, BOT)


def is_atomic(a: Formula) -> bool:
    return isinstance(a, Atom)


def is_compound(a: Formula) -> bool:
    return isinstance(a, _Binary)


# ---------------------------------------------------------------------------
# Sequents
# ---------------------------------------------------------------------------


def sort_key(a: Formula) -> tuple:
    """Canonical total order: atoms first, then by rendered text."""
    return (0 if isinstance(a, Atom) else 1, render(a))


def ordered(formulas: Iterable[Formula]) -> list:
    return sorted(formulas, key=sort_key)


@dataclass(frozen=True, slots=True)
class Sequent:
    left: frozenset
    right: frozenset

    @classmethod
    def of(cls, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> "Sequent":
        return cls(frozenset(left), frozenset(right))

    @property
    def is_atomic(self) -> bool:
        return all(isinstance(a, Atom) for a in self.left | self.right)

    def atoms(self) -> frozenset:
        return atoms_of(self.left | self.right)

    def formulas(self) -> frozenset:
        return self.left | self.right

    def subsumes(self, other: "Sequent") -> bool:
        return self.left <= other.left and self.right <= other.right

    def weaken(self, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> "Sequent":
        return Sequent(self.left | frozenset(left), self.right | frozenset(right))

    def __str__(self):
        return render(self)


def atoms_of(x) -> frozenset:
    """Atoms occurring in a formula, a collection of formulas, or a sequent."""
    if isinstance(x, Sequent):
        return x.atoms()
    if isinstance(x, Atom):
        return frozenset([x])
    if isinstance(x, Bottom):
        return frozenset()
    if isinstance(x, _Binary):
        return atoms_of(x.left) | atoms_of(x.right)
    out = frozenset()
    for a in x:
        out |= atoms_of(a)
    return out


def subformulas(formulas) -> frozenset:
    """Smallest superset of ``formulas`` closed under immediate subformulas."""
    if isinstance(formulas, (Atom, Bottom, _Binary)):
        formulas = [formulas]
    seen = set()
    stack = list(formulas)
    while stack:
        a = stack.pop()
        if a in seen:
            continue
        seen.add(a)
        if isinstance(a, _Binary):
            stack.append(a.left)
            stack.append(a.right)
    return frozenset(seen)


def degree(x) -> int:
    """Connective count; ``bot`` counts as one. Sums over collections and sequents."""
    if isinstance(x, Atom):
        return 0
    if isinstance(x, Bottom):
        return 1
    if isinstance(x, _Binary):
        return 1 + degree(x.left) + degree(x.right)
    if isinstance(x, Sequent):
        return degree(x.left) + degree(x.right)
    return sum(degree(a) for a in x)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _render_formula(a: Formula) -> str:
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, Bottom):
        return "bot"
    kind = type(a)
    level = _LEVEL[kind]
    left = _render_formula(a.left)
    right = _render_formula(a.right)
    # right-associative: same-level child on the left needs parentheses
    if is_compound(a.left) and _LEVEL[type(a.left)] <= level:
        left = f"({left})"
    if is_compound(a.right) and _LEVEL[type(a.right)] < level:
        right = f"({right})"
    return f"{left} {_SYMBOL[kind]} {right}"


def render_list(formulas: Iterable[Formula]) -> str:
    return ", ".join(_render_formula(a) for a in ordered(formulas))


def render(x, fmt: str = "text") -> str:
    """Render a formula, sequent, proof, or derivation as text or LaTeX."""
    if fmt == "latex":
        from .latex import to_latex

        return to_latex(x)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(x, (Atom, Bottom, _Binary)):
        return _render_formula(x)
    if isinstance(x, Sequent):
        left, right = render_list(x.left), render_list(x.right)
        return f"{left} => {right}".strip() if left else f"=> {right}".rstrip()
    if hasattr(x, "to_text"):
        return x.to_text()
    raise TypeError(f"cannot render {type(x).__name__}")


def mapped_name(a: Formula) -> str:
    return f"{MAPPED_PREFIX}({_render_formula(a)})"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->|=>|\|-|\|=)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<mapped>@\()|(?P<punct>[&|~(),;])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", text, start)
        if kind == "mapped":
            # scan to the matching close paren
            depth, i = 1, m.end()
            while i < len(text) and depth:
                depth += {"(": 1, ")": -1}.get(text[i], 0)
                i += 1
            if depth:
                raise ParseError("unterminated proxy atom", text, start)
            tokens.append(("mapped", text[start:i], start))
            pos = i
            continue
        tokens.append((kind if kind != "punct" else value, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_mapped: bool = False):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_mapped = allow_mapped

    def peek(self):
        return self.tokens[self.i]

    def at(self, *values) -> bool:
        kind, value, _ = self.peek()
        return value in values and kind != "ident"

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, got, pos = self.take()
        if got != value or kind == "ident":
            raise ParseError(f"expected {value!r}, got {got or 'end of input'!r}", self.text, pos)

    def fail(self, what: str):
        _, got, pos = self.peek()
        raise ParseError(f"expected {what}, got {got or 'end of input'!r}", self.text, pos)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.take()
            return Imp(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.at("|"):
            self.take()
            parts.append(self.conjunction())
        return _fold_right(Or, parts)

    def conjunction(self) -> Formula:
        parts = [self.unit()]
        while self.at("&"):
            self.take()
            parts.append(self.unit())
        return _fold_right(And, parts)

    def unit(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "ident":
            self.take()
            return BOT if value == "bot" else Atom(value)
        if kind == "mapped":
            self.take()
            if not self.allow_mapped:
                raise ParseError("atoms starting with '@' are reserved", self.text, pos)
            inner = parse_formula(value[2:-1], allow_mapped=True)
            return Atom(mapped_name(inner)) if is_compound(inner) or inner == BOT else inner
        if kind == "~":
            self.take()
            return neg(self.unit())
        if kind == "(":
            self.take()
            inner = self.formula()
            self.expect(")")
            return inner
        self.fail("a formula")

    def formula_list(self, stops: tuple) -> list:
        items = []
        if self.peek()[0] == "eof" or self.at(*stops):
            return items
        items.append(self.formula())
        while self.at(","):
            self.take()
            items.append(self.formula())
        return items

    def sequent(self, arrow: str = "=>") -> Sequent:
        left = self.formula_list((arrow,))
        self.expect(arrow)
        right = self.formula_list(())
        return Sequent.of(left, right)

    def done(self):
        kind, value, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {value!r}", self.text, pos)


def _fold_right(ctor, parts: list) -> Formula:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = ctor(p, out)
    return out


def parse_formula(text: str, allow_mapped: bool = False) -> Formula:
    p = _Parser(text, allow_mapped)
    f = p.formula()
    p.done()
    return f


def parse_sequent(text: str, allow_mapped: bool = False, arrow: str = "=>") -> Sequent:
    """Parse ``"Γ => Δ"``; duplicate formulas collapse."""
    p = _Parser(text, allow_mapped)
    s = p.sequent(arrow)
    p.done()
    return s


def parse_formula_list(text: str, allow_mapped: bool = False) -> list:
    p = _Parser(text, allow_mapped)
    items = p.formula_list(())
    p.done()
    return items
