"""Entailment oracle, axiom schemas, pattern matching, modus ponens.

The oracle itself is the ground truth for everything else in the package,
so it gets the heaviest cross-checking: every verdict is recomputed by a
separate brute-force evaluator, and the compiled backend is compared
against the pure-Python one on identical programs.
"""

import random
from array import array

import pytest

from claimgraph.errors import (
    AtomCapExceededError,
    NotAnImplicationError,
    PremiseMismatchError,
)
from claimgraph.formula import Atom, Implies, Not, parse_formula, print_formula
from claimgraph.gen import atom_alphabet, random_axiom_instance, random_formula
from claimgraph.kernel import (
    A1,
    A2,
    A3,
    AXIOM_SCHEMAS,
    KERNEL_BACKEND,
    apply_modus_ponens,
    counterexample,
    entails,
    is_axiom_instance,
    match_pattern,
    substitute,
)
from claimgraph import kernel

from conftest import enumerate_entailment


def test_entails_basic():
    p, q = Atom("p"), Atom("q")
    assert entails([p, Implies(p, q)], q)
    assert not entails([p], q)
    assert entails([], Implies(p, p))
    assert entails([p, Not(p)], q)  # ex falso


def test_entails_matches_enumeration_oracle():
    rng = random.Random(402)
    alphabet = atom_alphabet(5)
    agree = 0
    for _ in range(500):
        hyps = [random_formula(rng, alphabet, 3)
                for _ in range(rng.randint(0, 3))]
        goal = random_formula(rng, alphabet, 3)
        got = entails(hyps, goal)
        want = enumerate_entailment(hyps, goal)
        assert got == want, (hyps, goal)
        agree += got == want
    assert agree == 500


def test_counterexample_is_a_real_countermodel():
    rng = random.Random(403)
    alphabet = atom_alphabet(4)
    from claimgraph.formula import eval_formula

    found = 0
    for _ in range(300):
        hyps = [random_formula(rng, alphabet, 2)
                for _ in range(rng.randint(0, 2))]
        goal = random_formula(rng, alphabet, 2)
        model = counterexample(hyps, goal)
        if model is None:
            assert enumerate_entailment(hyps, goal)
        else:
            found += 1
            assert all(eval_formula(h, model) for h in hyps)
            assert not eval_formula(goal, model)
    assert found > 50  # the sample is not degenerate


def test_atom_cap():
    many = [Atom(f"a{i}") for i in range(21)]
    goal = many[0]
    with pytest.raises(AtomCapExceededError):
        entails(many, goal)
    # an explicit higher cap makes the same query answerable
    assert entails(many, goal, atom_cap=21)
    # at the cap exactly, no error
    assert entails(many[:20], goal, atom_cap=20)


def test_axiom_schema_shapes():
    assert print_formula(A1.pattern) == "a -> b -> a"
    assert print_formula(A2.pattern) == "(a -> b -> c) -> (a -> b) -> a -> c"
    assert print_formula(A3.pattern) == "(!a -> !b) -> b -> a"
    assert AXIOM_SCHEMAS == (A1, A2, A3)


def test_axiom_instances_are_tautologies():
    # soundness of the schema set, judged by the independent evaluator
    rng = random.Random(404)
    alphabet = atom_alphabet(4)
    for _ in range(1000):
        inst = random_axiom_instance(rng, alphabet, max_depth=2)
        assert enumerate_entailment([], inst), print_formula(inst)


def test_is_axiom_instance_positive():
    m = is_axiom_instance(parse_formula("p -> q -> p"))
    assert m is not None and m.schema_id == "A1"
    m = is_axiom_instance(parse_formula("(p -> q -> r) -> (p -> q) -> p -> r"))
    assert m is not None and m.schema_id == "A2"
    m = is_axiom_instance(parse_formula("(!p -> !q) -> q -> p"))
    assert m is not None and m.schema_id == "A3"
    # compound substitutions count too
    m = is_axiom_instance(parse_formula("(x & y) -> !z -> (x & y)"))
    assert m is not None and m.schema_id == "A1"


def test_is_axiom_instance_negative():
    for text in ("p", "p -> p", "p -> q", "!(p -> q -> p)",
                 "(p -> q) -> p -> q", "p -> q -> q"):
        assert is_axiom_instance(parse_formula(text)) is None, text


def test_match_substitute_round_trip():
    rng = random.Random(405)
    alphabet = atom_alphabet(4)
    for schema in AXIOM_SCHEMAS:
        for _ in range(300):
            binding = {name: random_formula(rng, alphabet, 2)
                       for name in ("a", "b", "c")}
            inst = substitute(schema.pattern, binding)
            got = match_pattern(schema.pattern, inst)
            assert got is not None
            # only metavariables that occur in the pattern are recovered
            for name, value in got.items():
                assert binding[name] == value


def test_match_pattern_consistency():
    # the same metavariable must bind the same subformula everywhere
    pattern = parse_formula("a -> a")
    assert match_pattern(pattern, parse_formula("p -> p")) is not None
    assert match_pattern(pattern, parse_formula("p -> q")) is None


def test_apply_modus_ponens():
    p, q = Atom("p"), Atom("q")
    assert apply_modus_ponens(p, Implies(p, q)) == q
    with pytest.raises(NotAnImplicationError):
        apply_modus_ponens(p, q)
    with pytest.raises(PremiseMismatchError):
        apply_modus_ponens(p, Implies(q, q))


def test_modus_ponens_sound():
    rng = random.Random(406)
    alphabet = atom_alphabet(4)
    for _ in range(300):
        minor = random_formula(rng, alphabet, 2)
        consequent = random_formula(rng, alphabet, 2)
        conclusion = apply_modus_ponens(minor, Implies(minor, consequent))
        assert conclusion == consequent
        assert enumerate_entailment([minor, Implies(minor, consequent)],
                                    conclusion)


def test_backend_reports_name():
    assert KERNEL_BACKEND in ("compiled", "python")


def test_backends_agree_on_programs():
    """Compiled and pure backends must return the same countermodel mask."""
    pure = pytest.importorskip("claimgraph._ttable_py")
    try:
        from claimgraph import _ttable as compiled
    except ImportError:
        pytest.skip("compiled backend not built")

    rng = random.Random(407)
    alphabet = atom_alphabet(5)
    for _ in range(300):
        hyps = [random_formula(rng, alphabet, 3)
                for _ in range(rng.randint(0, 3))]
        goal = random_formula(rng, alphabet, 3)
        names: set = set()
        for f in hyps + [goal]:
            from claimgraph.formula import atoms
            names |= atoms(f)
        index = {name: i for i, name in enumerate(sorted(names))}
        ops = array("i")
        args = array("i")
        bounds = array("i", [0])
        for f in hyps + [goal]:
            kernel._compile_into(f, index, ops, args)
            bounds.append(len(ops))
        got_pure = pure.find_countermodel(ops, args, bounds, len(index))
        got_comp = compiled.find_countermodel(ops, args, bounds, len(index))
        assert got_pure == got_comp
