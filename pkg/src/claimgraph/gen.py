"""Seeded random generators for formulas, axiom instances, verified
derivation graphs, valid linear proofs, and detectable corruptions.

Everything takes an explicit ``random.Random`` so callers control the
seed. Derivation graphs are built constructively: each proof node is
assembled from an inference that holds by construction, so the whole
graph verifies, and (by soundness of the calculus) its hypotheses entail
its conclusion. Corruptions only touch fields that verification checks
(premise refs, inline truisms, the conclusion) and only in ways that are
guaranteed to fail, so a detector that misses one is broken.
"""

from __future__ import annotations

import random
import string
from typing import Optional

from claimgraph.formula import (
    And,
    Atom,
    Formula,
    Implies,
    Not,
    Or,
)
from claimgraph.kernel import A1, A2, A3, substitute
from claimgraph.linear import AxiomLine, HypLine, LinearProof, MPLine, ProofLine
from claimgraph.proofgraph import (
    GraphNode,
    ProofNode,
    PropositionNode,
    Role,
)


def atom_alphabet(n: int) -> list[str]:
    """The first ``n`` single-letter atom names."""
    if not 1 <= n <= 26:
        raise ValueError("alphabet size must be in 1..26")
    return list(string.ascii_lowercase[:n])


def random_formula(rng: random.Random, atoms: list[str], max_depth: int = 3) -> Formula:
    if max_depth <= 0 or rng.random() < 0.35:
        return Atom(rng.choice(atoms))
    roll = rng.random()
    if roll < 0.25:
        return Not(random_formula(rng, atoms, max_depth - 1))
    left = random_formula(rng, atoms, max_depth - 1)
    right = random_formula(rng, atoms, max_depth - 1)
    if roll < 0.55:
        return Implies(left, right)
    if roll < 0.8:
        return And(left, right)
    return Or(left, right)


def random_axiom_instance(rng: random.Random, atoms: list[str],
                          max_depth: int = 2) -> Formula:
    schema = rng.choice((A1, A2, A3))
    binding = {
        name: random_formula(rng, atoms, max_depth)
        for name in ("a", "b", "c")
    }
    return substitute(schema.pattern, binding)


# -- verified derivation graphs -----------------------------------------


def _pick_small(rng: random.Random, atoms: list[str],
                pool: list[tuple[int, Formula]]) -> Formula:
    # reusing a pool formula seeds later direct modus ponens hits
    if pool and rng.random() < 0.5:
        return rng.choice(pool)[1]
    return random_formula(rng, atoms, max_depth=1)


def random_derivation(rng: random.Random, *, max_atoms: int = 12,
                      max_nodes: int = 30) -> tuple[dict[int, GraphNode], int]:
    """A random derivation graph that verifies, plus its root id.

    Node ids are assigned in creation order and premise refs only point
    backward, so the graph is acyclic. Proof nodes may cite proposition
    nodes or earlier proof nodes.
    """
    atoms = atom_alphabet(rng.randint(1, max_atoms))
    nodes: dict[int, GraphNode] = {}
    pool: list[tuple[int, Formula]] = []
    next_id = 1

    for _ in range(rng.randint(1, 4)):
        formula = random_formula(rng, atoms, max_depth=rng.randint(0, 2))
        role = rng.choice((Role.DATA, Role.EXPLANATORY))
        nodes[next_id] = PropositionNode(next_id, formula, role)
        pool.append((next_id, formula))
        next_id += 1

    target_nodes = rng.randint(next_id, max_nodes)
    last_proof_id: Optional[int] = None

    def add_proof(premises: tuple[int, ...], truisms: tuple[Formula, ...],
                  conclusion: Formula) -> None:
        nonlocal next_id, last_proof_id
        nodes[next_id] = ProofNode(next_id, premises, truisms, conclusion)
        pool.append((next_id, conclusion))
        last_proof_id = next_id
        next_id += 1

    def step_expand() -> None:
        # from X: F and the truism F -> (B -> F), conclude B -> F
        node_id, f = rng.choice(pool)
        beta = _pick_small(rng, atoms, pool)
        truism = substitute(A1.pattern, {"a": f, "b": beta})
        add_proof((node_id,), (truism,), Implies(beta, f))

    def step_two_truisms() -> None:
        # T plus T -> (B -> T) are both axioms; conclude B -> T
        t = random_axiom_instance(rng, atoms, max_depth=1)
        beta = _pick_small(rng, atoms, pool)
        lift = substitute(A1.pattern, {"a": t, "b": beta})
        add_proof((), (t, lift), Implies(beta, t))

    def step_direct() -> bool:
        # two pool entries already forming a modus ponens pair
        candidates = []
        for minor_id, minor in pool:
            for major_id, major in pool:
                if (major_id != minor_id and isinstance(major, Implies)
                        and major.antecedent == minor):
                    candidates.append((minor_id, major_id, major.consequent))
        if not candidates:
            return False
        minor_id, major_id, conclusion = rng.choice(candidates)
        add_proof((minor_id, major_id), (), conclusion)
        return True

    def step_distribute() -> bool:
        # from X: a -> (b -> c), conclude (a -> b) -> (a -> c)
        candidates = [
            (node_id, f) for node_id, f in pool
            if isinstance(f, Implies) and isinstance(f.consequent, Implies)
        ]
        if not candidates:
            return False
        node_id, f = rng.choice(candidates)
        binding = {"a": f.antecedent, "b": f.consequent.antecedent,
                   "c": f.consequent.consequent}
        truism = substitute(A2.pattern, binding)
        conclusion = Implies(
            Implies(binding["a"], binding["b"]),
            Implies(binding["a"], binding["c"]),
        )
        add_proof((node_id,), (truism,), conclusion)
        return True

    def step_contrapose() -> bool:
        # from X: !a -> !b, conclude b -> a
        candidates = [
            (node_id, f) for node_id, f in pool
            if isinstance(f, Implies) and isinstance(f.antecedent, Not)
            and isinstance(f.consequent, Not)
        ]
        if not candidates:
            return False
        node_id, f = rng.choice(candidates)
        binding = {"a": f.antecedent.operand, "b": f.consequent.operand}
        truism = substitute(A3.pattern, binding)
        add_proof((node_id,), (truism,), Implies(binding["b"], binding["a"]))
        return True

    while next_id <= target_nodes or last_proof_id is None:
        roll = rng.random()
        if roll < 0.15 and step_direct():
            continue
        if roll < 0.3 and step_distribute():
            continue
        if roll < 0.4 and step_contrapose():
            continue
        if roll < 0.7:
            step_expand()
        else:
            step_two_truisms()

    return nodes, last_proof_id


# -- valid linear proofs -------------------------------------------------


def random_linear_proof(rng: random.Random, *, max_lines: int = 50,
                        max_atoms: int = 6) -> LinearProof:
    """A random well-formed linear proof of at most ``max_lines`` lines."""
    atoms = atom_alphabet(rng.randint(1, max_atoms))
    hypotheses: list[Formula] = []
    lines: list[ProofLine] = []
    slots: list[Formula] = []

    def add_hyp() -> None:
        formula = random_formula(rng, atoms, max_depth=2)
        if formula in hypotheses:
            index = hypotheses.index(formula)
        else:
            index = len(hypotheses)
            hypotheses.append(formula)
        lines.append(HypLine(index))
        slots.append(formula)

    def add_ax() -> None:
        formula = random_axiom_instance(rng, atoms, max_depth=1)
        lines.append(AxiomLine(formula))
        slots.append(formula)

    def mp_candidates() -> list[tuple[int, int, Formula]]:
        found = []
        for i, minor in enumerate(slots):
            for j, major in enumerate(slots):
                if (i != j and isinstance(major, Implies)
                        and major.antecedent == minor):
                    found.append((i, j, major.consequent))
        return found

    def add_mp() -> None:
        candidates = mp_candidates()
        if candidates and (rng.random() < 0.7 or len(slots) >= max_lines - 2):
            i, j, conclusion = rng.choice(candidates)
            lines.append(MPLine(i, j))
            slots.append(conclusion)
            return
        # force a pair: lift an existing line with an expansion axiom
        base = rng.randrange(len(slots))
        f = slots[base]
        beta = random_formula(rng, atoms, max_depth=1)
        lines.append(AxiomLine(substitute(A1.pattern, {"a": f, "b": beta})))
        slots.append(Implies(f, Implies(beta, f)))
        lines.append(MPLine(base, len(slots) - 1))
        slots.append(Implies(beta, f))

    # keep two lines in reserve so the proof always closes with an mp step
    budget = max_lines - 2
    for _ in range(rng.randint(1, min(3, budget - 1))):
        add_hyp()
    target = rng.randint(len(lines) + 1, budget)
    while len(lines) < target:
        room = budget - len(lines)
        roll = rng.random()
        if roll < 0.15:
            add_hyp()
        elif roll < 0.4:
            add_ax()
        elif room >= 2:
            add_mp()
        else:
            add_ax()
    if not isinstance(lines[-1], MPLine):
        add_mp()
    return LinearProof(tuple(hypotheses), tuple(lines))


# -- guaranteed-detectable corruptions ------------------------------------


def _reachable_proof_nodes(graph: dict[int, GraphNode], root: int) -> list[ProofNode]:
    seen: set[int] = set()
    stack = [root]
    found = []
    while stack:
        node_id = stack.pop()
        if node_id in seen:
            continue
        seen.add(node_id)
        node = graph[node_id]
        if isinstance(node, ProofNode):
            found.append(node)
            stack.extend(node.premise_refs)
    return found


def perturb_derivation(rng: random.Random, graph: dict[int, GraphNode],
                       root: int) -> tuple[dict[int, GraphNode], str]:
    """Corrupt one verification-relevant field of one reachable proof node.

    Returns the corrupted graph (the input is not modified) and the kind
    of corruption applied: ``conclusion``, ``truism``, ``dangling`` or
    ``cycle``. Every kind makes verification fail.
    """
    targets = _reachable_proof_nodes(graph, root)
    if not targets:
        raise ValueError("no proof node reachable from root")
    node = rng.choice(targets)

    kinds = ["conclusion"]
    if node.inline_truisms:
        kinds.append("truism")
    if node.premise_refs:
        kinds.extend(["dangling", "cycle"])
    kind = rng.choice(kinds)

    if kind == "conclusion":
        # negating the conclusion always yields a different formula, and a
        # modus ponens step determines its conclusion uniquely
        replacement = ProofNode(
            node.node_id, node.premise_refs, node.inline_truisms,
            Not(node.conclusion),
        )
    elif kind == "truism":
        # no axiom instance has a negation at the top
        index = rng.randrange(len(node.inline_truisms))
        truisms = list(node.inline_truisms)
        truisms[index] = Not(truisms[index])
        replacement = ProofNode(
            node.node_id, node.premise_refs, tuple(truisms), node.conclusion
        )
    elif kind == "dangling":
        missing = max(graph) + 1 + rng.randrange(100)
        refs = list(node.premise_refs)
        refs[rng.randrange(len(refs))] = missing
        replacement = ProofNode(
            node.node_id, tuple(refs), node.inline_truisms, node.conclusion
        )
    else:
        refs = list(node.premise_refs)
        refs[rng.randrange(len(refs))] = node.node_id
        replacement = ProofNode(
            node.node_id, tuple(refs), node.inline_truisms, node.conclusion
        )

    corrupted = dict(graph)
    corrupted[node.node_id] = replacement
    return corrupted, kind
