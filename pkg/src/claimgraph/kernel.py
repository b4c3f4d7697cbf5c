"""The trusted logical kernel: axiom schemas, modus ponens, and a
brute-force semantic entailment oracle.

The proof calculus uses three implication/negation schemas with modus
ponens as its single inference rule:

    A1:  a -> (b -> a)
    A2:  (a -> (b -> c)) -> ((a -> b) -> (a -> c))
    A3:  (!a -> !b) -> (b -> a)

Together these are complete for the {!, ->} fragment, so every
propositional tautology over that fragment is derivable.

Entailment is decided by exhaustive truth-table enumeration. Formulas are
compiled to small postfix programs (parallel int arrays ``ops``/``args``;
opcodes: 0 load-atom, 1 not, 2 and, 3 or, 4 implies) and handed to a
backend that scans all 2**n assignments. The compiled backend
(``claimgraph._ttable``, a C extension) is picked at import when present;
``claimgraph._ttable_py`` is the drop-in pure-Python fallback. Set
CLAIMGRAPH_PURE_KERNEL=1 to force the fallback.
"""

from __future__ import annotations

import os
from array import array
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from claimgraph.errors import (
    AtomCapExceededError,
    NotAnImplicationError,
    PremiseMismatchError,
)
from claimgraph.formula import (
    And,
    Assignment,
    Atom,
    Formula,
    Implies,
    Not,
    Or,
    atoms,
    parse_formula,
    print_formula,
)


def _load_backend():
    if not os.environ.get("CLAIMGRAPH_PURE_KERNEL"):
        try:
            from claimgraph import _ttable

            return _ttable
        except ImportError:
            pass
    from claimgraph import _ttable_py

    return _ttable_py


_backend = _load_backend()

#: Which truth-table backend got selected at import: "compiled" or "python".
KERNEL_BACKEND: str = _backend.BACKEND_NAME

#: Default limit on distinct atoms the oracle will enumerate (2**20 rows).
DEFAULT_ATOM_CAP = 20


OP_LOAD, OP_NOT, OP_AND, OP_OR, OP_IMP = range(5)

_OPCODE = {Not: OP_NOT, And: OP_AND, Or: OP_OR, Implies: OP_IMP}


def _compile_into(f: Formula, atom_index: Mapping[str, int], ops: array, args: array) -> None:
    # postorder emission, iterative so deep conclusions can't blow the stack
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, emit = stack.pop()
        if emit:
            ops.append(_OPCODE[type(node)])
            args.append(0)
        elif isinstance(node, Atom):
            ops.append(OP_LOAD)
            args.append(atom_index[node.name])
        else:
            stack.append((node, True))
            if isinstance(node, Not):
                stack.append((node.operand, False))
            elif isinstance(node, Implies):
                stack.append((node.consequent, False))
                stack.append((node.antecedent, False))
            else:
                stack.append((node.right, False))
                stack.append((node.left, False))


def _find_countermodel(hypotheses: Iterable[Formula], goal: Formula,
                       atom_cap: Optional[int]) -> tuple[int, list[str]]:
    hyps = list(hypotheses)
    cap = DEFAULT_ATOM_CAP if atom_cap is None else atom_cap
    names: set[str] = atoms(goal)
    for h in hyps:
        names |= atoms(h)
    ordered = sorted(names)
    if len(ordered) > cap:
        raise AtomCapExceededError(
            f"{len(ordered)} distinct atoms exceed the oracle cap of {cap}"
        )
    atom_index = {name: i for i, name in enumerate(ordered)}

    ops = array("i")
    args = array("i")
    bounds = array("i", [0])
    for f in hyps + [goal]:
        _compile_into(f, atom_index, ops, args)
        bounds.append(len(ops))
    mask = _backend.find_countermodel(ops, args, bounds, len(ordered))
    return mask, ordered


def entails(hypotheses: Iterable[Formula], goal: Formula,
            atom_cap: Optional[int] = None) -> bool:
    """True iff every assignment satisfying all hypotheses satisfies the
    goal, decided by enumerating all 2**n assignments.

    Raises AtomCapExceededError when the inputs mention more distinct atoms
    than ``atom_cap`` (default DEFAULT_ATOM_CAP); that signals the oracle is
    inapplicable, not that the entailment fails.
    """
    mask, _ = _find_countermodel(hypotheses, goal, atom_cap)
    return mask == -1


def counterexample(hypotheses: Iterable[Formula], goal: Formula,
                   atom_cap: Optional[int] = None) -> Optional[dict[str, bool]]:
    """An assignment witnessing non-entailment, or None when the
    entailment holds. Same cap rules as ``entails``."""
    mask, ordered = _find_countermodel(hypotheses, goal, atom_cap)
    if mask == -1:
        return None
    return {name: bool((mask >> i) & 1) for i, name in enumerate(ordered)}


@dataclass(frozen=True)
class AxiomSchema:
    """A formula pattern whose atoms are metavariables; every substitution
    instance is a logical axiom."""

    schema_id: str
    pattern: Formula


A1 = AxiomSchema("A1", parse_formula("a -> b -> a"))
A2 = AxiomSchema("A2", parse_formula("(a -> b -> c) -> (a -> b) -> a -> c"))
A3 = AxiomSchema("A3", parse_formula("(!a -> !b) -> b -> a"))

#: Match order is fixed A1, A2, A3; first match wins.
AXIOM_SCHEMAS: tuple[AxiomSchema, ...] = (A1, A2, A3)


@dataclass(frozen=True)
class AxiomMatch:
    schema_id: str
    substitution: Mapping[str, Formula]

    def describe(self) -> str:
        subs = ", ".join(
            f"{k} := {print_formula(v)}" for k, v in sorted(self.substitution.items())
        )
        return f"{self.schema_id} [{subs}]"


def match_pattern(pattern: Formula, f: Formula,
                  binding: Optional[dict[str, Formula]] = None) -> Optional[dict[str, Formula]]:
    """One-sided structural match of ``pattern`` against ``f``.

    Atoms of the pattern are metavariables; each may bind any subformula but
    must bind consistently. Returns the witnessing substitution or None.
    """
    if binding is None:
        binding = {}
    if not _match(pattern, f, binding):
        return None
    return binding


def _match(pattern: Formula, f: Formula, binding: dict[str, Formula]) -> bool:
    if isinstance(pattern, Atom):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = f
            return True
        return bound == f
    if type(pattern) is not type(f):
        return False
    if isinstance(pattern, Not):
        return _match(pattern.operand, f.operand, binding)
    if isinstance(pattern, Implies):
        return _match(pattern.antecedent, f.antecedent, binding) and _match(
            pattern.consequent, f.consequent, binding
        )
    return _match(pattern.left, f.left, binding) and _match(
        pattern.right, f.right, binding
    )


def substitute(pattern: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Replace every metavariable atom of ``pattern`` per ``binding``."""
    if isinstance(pattern, Atom):
        try:
            return binding[pattern.name]
        except KeyError:
            raise KeyError(f"unbound metavariable {pattern.name!r}") from None
    if isinstance(pattern, Not):
        return Not(substitute(pattern.operand, binding))
    if isinstance(pattern, Implies):
        return Implies(
            substitute(pattern.antecedent, binding),
            substitute(pattern.consequent, binding),
        )
    if isinstance(pattern, And):
        return And(substitute(pattern.left, binding), substitute(pattern.right, binding))
    return Or(substitute(pattern.left, binding), substitute(pattern.right, binding))


def is_axiom_instance(f: Formula) -> Optional[AxiomMatch]:
    """The first schema (in A1, A2, A3 order) that ``f`` instantiates,
    with the witnessing substitution; None when no schema matches."""
    for schema in AXIOM_SCHEMAS:
        binding = match_pattern(schema.pattern, f)
        if binding is not None:
            return AxiomMatch(schema.schema_id, binding)
    return None


def apply_modus_ponens(minor: Formula, major: Formula) -> Formula:
    """From ``minor`` and ``major = minor -> y``, conclude ``y``."""
    if not isinstance(major, Implies):
        raise NotAnImplicationError(
            f"major premise is not an implication: {print_formula(major)}"
        )
    if major.antecedent != minor:
        raise PremiseMismatchError(
            f"antecedent {print_formula(major.antecedent)} does not match "
            f"minor premise {print_formula(minor)}"
        )
    return major.consequent
