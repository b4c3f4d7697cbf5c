"""Propositional formulas: AST, parser, printer, and truth-table evaluation.

The language has atoms, negation, implication, conjunction and disjunction.
Proof checking only ever produces axiom instances over ``!`` and ``->``, but
the full connective set is parsed and evaluated so data propositions and the
semantic oracle can use it.

Grammar (ASCII, whitespace insignificant between tokens)::

    formula := impl
    impl    := disj ("->" impl)?
    disj    := conj ("|" conj)*
    conj    := neg ("&" neg)*
    neg     := "!" neg | "(" formula ")" | atom
    atom    := [a-z][a-z0-9_]*

``->`` is right-associative; ``&`` and ``|`` associate to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from claimgraph.errors import FormulaSyntaxError, MissingAtomError

_ATOM_RE = re.compile(r"[a-z][a-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not _ATOM_RE.fullmatch(self.name):
            raise ValueError(f"bad atom name: {self.name!r}")


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Not, Implies, And, Or]

Assignment = Mapping[str, bool]


def atoms(f: Formula) -> set[str]:
    """Set of atom names occurring in ``f``."""
    out: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, Implies):
            stack.append(node.antecedent)
            stack.append(node.consequent)
        else:
            stack.append(node.left)
            stack.append(node.right)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of ``f``, including ``f`` itself (pre-order)."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, Implies):
            stack.append(node.consequent)
            stack.append(node.antecedent)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)


class _Parser:
    """Recursive-descent parser reporting byte offsets on failure."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def error(self, expected: str):
        raise FormulaSyntaxError(f"expected {expected}", self.pos)

    def eat(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def parse(self) -> Formula:
        f = self.impl()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("end of input")
        return f

    def impl(self) -> Formula:
        left = self.disj()
        if self.eat("->"):
            return Implies(left, self.impl())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.eat("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.neg()
        while self.eat("&"):
            f = And(f, self.neg())
        return f

    def neg(self) -> Formula:
        self.skip_ws()
        if self.eat("!"):
            return Not(self.neg())
        if self.eat("("):
            f = self.impl()
            if not self.eat(")"):
                self.error("')'")
            return f
        m = _ATOM_RE.match(self.text, self.pos)
        if not m:
            self.error("formula")
        self.pos = m.end()
        return Atom(m.group())


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into its unique AST per the grammar.

    Raises FormulaSyntaxError with the byte offset of the first problem.
    """
    return _Parser(text).parse()


# Precedence levels used by the minimal-parenthesis printer. A child is
# parenthesised when its level is below the minimum its position requires.
_LEVEL_IMPL, _LEVEL_OR, _LEVEL_AND, _LEVEL_NEG, _LEVEL_ATOM = range(5)


def _level(f: Formula) -> int:
    if isinstance(f, Atom):
        return _LEVEL_ATOM
    if isinstance(f, Not):
        return _LEVEL_NEG
    if isinstance(f, And):
        return _LEVEL_AND
    if isinstance(f, Or):
        return _LEVEL_OR
    return _LEVEL_IMPL


def _render(f: Formula, floor: int) -> str:
    if _level(f) < floor:
        return "(" + _render(f, _LEVEL_IMPL) + ")"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "!" + _render(f.operand, _LEVEL_NEG)
    if isinstance(f, And):
        return _render(f.left, _LEVEL_AND) + " & " + _render(f.right, _LEVEL_NEG)
    if isinstance(f, Or):
        return _render(f.left, _LEVEL_OR) + " | " + _render(f.right, _LEVEL_AND)
    return _render(f.antecedent, _LEVEL_OR) + " -> " + _render(f.consequent, _LEVEL_IMPL)


def print_formula(f: Formula) -> str:
    """Canonical rendering with minimal parentheses.

    parse_formula(print_formula(f)) is structurally f, for every f.
    """
    return _render(f, _LEVEL_IMPL)


def eval_formula(f: Formula, assignment: Assignment) -> bool:
    """Classical truth value of ``f`` under a total assignment."""
    if isinstance(f, Atom):
        try:
            return bool(assignment[f.name])
        except KeyError:
            raise MissingAtomError(f"assignment does not cover atom {f.name!r}") from None
    if isinstance(f, Not):
        return not eval_formula(f.operand, assignment)
    if isinstance(f, And):
        return eval_formula(f.left, assignment) and eval_formula(f.right, assignment)
    if isinstance(f, Or):
        return eval_formula(f.left, assignment) or eval_formula(f.right, assignment)
    return (not eval_formula(f.antecedent, assignment)) or eval_formula(f.consequent, assignment)
