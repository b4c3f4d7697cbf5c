"""Proposition and proof nodes forming verifiable derivation graphs.

A proof node derives its conclusion from exactly two inputs by modus
ponens. Inputs are premise references (to proposition nodes or to earlier
proof nodes, whose conclusions stand in for them) and inline truisms
(axiom-schema instances written on the node itself, at most two). Node
size is therefore constant no matter how long the overall derivation is.

Verification is pure: graphs are immutable snapshots and any number of
roots can be checked concurrently. Acyclicity is enforced here, at
verification time, not at insertion time, so partially built arguments can
exist unverified.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from claimgraph.errors import CycleError, DanglingReferenceError
from claimgraph.formula import Formula, Not, Implies, print_formula
from claimgraph.kernel import is_axiom_instance


class Role(enum.Enum):
    """Whether a proposition records a measurement or explains one."""

    DATA = "data"
    EXPLANATORY = "explanatory"


@dataclass(frozen=True)
class PropositionNode:
    node_id: int
    formula: Formula
    role: Role = Role.EXPLANATORY


@dataclass(frozen=True)
class ProofNode:
    node_id: int
    premise_refs: tuple[int, ...]
    inline_truisms: tuple[Formula, ...]
    conclusion: Formula

    def __post_init__(self):
        if len(self.premise_refs) + len(self.inline_truisms) != 2:
            raise ValueError("a proof node takes exactly two inputs")
        if len(self.inline_truisms) > 2:
            raise ValueError("at most two inline truisms per node")


GraphNode = Union[PropositionNode, ProofNode]

#: A derivation graph is simply node ids mapped to nodes.
Graph = Mapping[int, GraphNode]

Resolver = Callable[[int], Formula]


def node_formula(node: GraphNode) -> Formula:
    return node.formula if isinstance(node, PropositionNode) else node.conclusion


def graph_resolver(graph: Graph) -> Resolver:
    def resolve(node_id: int) -> Formula:
        try:
            return node_formula(graph[node_id])
        except KeyError:
            raise DanglingReferenceError(
                f"premise reference to unknown node {node_id}", node_id
            ) from None

    return resolve


@dataclass(frozen=True)
class NodeVerdict:
    node_id: int
    valid: bool
    reason: Optional[str] = None  # machine-readable failure code
    detail: Optional[str] = None


def _judge_modus_ponens(inputs: list[Formula], conclusion: Formula) -> tuple[bool, str, str]:
    """Decide whether one input implies the conclusion from the other.

    Returns (valid, reason, detail); reason/detail are empty on success.
    """
    a, b = inputs
    for minor, major in ((a, b), (b, a)):
        if isinstance(major, Implies) and major.antecedent == minor:
            if major.consequent == conclusion:
                return True, "", ""
            return (
                False,
                "conclusion_mismatch",
                f"modus ponens yields {print_formula(major.consequent)}, "
                f"node claims {print_formula(conclusion)}",
            )
    if not isinstance(a, Implies) and not isinstance(b, Implies):
        return False, "no_implication_input", "neither input is an implication"
    return (
        False,
        "antecedent_mismatch",
        "no input matches the antecedent of the other",
    )


def verify_proof_node(node: ProofNode, resolve: Resolver) -> NodeVerdict:
    """Check one proof node: every inline truism must instantiate an axiom
    schema, and the two inputs must form a modus ponens step concluding
    exactly the node's conclusion.

    Raises DanglingReferenceError when a premise reference does not resolve.
    """
    for truism in node.inline_truisms:
        if is_axiom_instance(truism) is None:
            return NodeVerdict(
                node.node_id,
                False,
                "truism_not_axiom",
                f"{print_formula(truism)} instantiates no axiom schema",
            )
    inputs = [resolve(ref) for ref in node.premise_refs]
    inputs.extend(node.inline_truisms)
    if len(inputs) != 2:
        return NodeVerdict(node.node_id, False, "wrong_input_count",
                           f"{len(inputs)} inputs, modus ponens needs 2")
    ok, reason, detail = _judge_modus_ponens(inputs, node.conclusion)
    if ok:
        return NodeVerdict(node.node_id, True)
    return NodeVerdict(node.node_id, False, reason, detail)


@dataclass(frozen=True)
class DerivationReport:
    root: int
    valid: bool
    conclusion: Formula
    #: formulas of reached proposition nodes, ordered by node id, deduplicated
    hypotheses: tuple[Formula, ...]
    #: one verdict per visited node, ordered by node id
    verdicts: tuple[NodeVerdict, ...]

    def verdict_for(self, node_id: int) -> NodeVerdict:
        for v in self.verdicts:
            if v.node_id == node_id:
                return v
        raise KeyError(node_id)


def verify_derivation(graph: Graph, root: int) -> DerivationReport:
    """Walk the premise DAG from ``root`` and judge every node on it.

    Overall validity requires every visited proof node to pass
    verify_proof_node and the premise relation to be acyclic. Raises
    CycleError (naming a node on the cycle) or DanglingReferenceError.
    """
    if root not in graph:
        raise DanglingReferenceError(f"root node {root} does not exist", root)
    resolve = graph_resolver(graph)

    visited: set[int] = set()
    in_progress: set[int] = set()
    verdicts: dict[int, NodeVerdict] = {}
    hypothesis_ids: list[int] = []

    # iterative DFS with an explicit done-marker so cycles are caught as
    # back edges
    stack: list[tuple[int, bool]] = [(root, False)]
    while stack:
        node_id, done = stack.pop()
        if done:
            in_progress.discard(node_id)
            continue
        if node_id in visited:
            if node_id in in_progress:
                raise CycleError(node_id)
            continue
        if node_id not in graph:
            raise DanglingReferenceError(
                f"premise reference to unknown node {node_id}", node_id
            )
        visited.add(node_id)
        node = graph[node_id]
        if isinstance(node, PropositionNode):
            verdicts[node_id] = NodeVerdict(node_id, True)
            hypothesis_ids.append(node_id)
            continue
        in_progress.add(node_id)
        stack.append((node_id, True))
        for ref in node.premise_refs:
            if ref in in_progress:
                raise CycleError(ref)
            stack.append((ref, False))
        verdicts[node_id] = verify_proof_node(node, resolve)

    hypotheses: list[Formula] = []
    for node_id in sorted(hypothesis_ids):
        f = node_formula(graph[node_id])
        if f not in hypotheses:
            hypotheses.append(f)

    ordered = tuple(verdicts[i] for i in sorted(verdicts))
    return DerivationReport(
        root=root,
        valid=all(v.valid for v in ordered),
        conclusion=node_formula(graph[root]),
        hypotheses=tuple(hypotheses),
        verdicts=ordered,
    )


class ConsistencyStatus(enum.Enum):
    #: no member is the negation of another; nothing deeper is claimed
    CONSISTENT_SYNTACTICALLY = "consistent_syntactically"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class Theory:
    """A named set of proposition-node references."""

    theory_id: int
    name: str
    members: tuple[int, ...]


@dataclass(frozen=True)
class ConsistencyVerdict:
    status: ConsistencyStatus
    #: a member pair (f, !f) witnessing the contradiction, when inconsistent
    witness: Optional[tuple[Formula, Formula]] = None

    @property
    def consistent(self) -> bool:
        return self.status is ConsistencyStatus.CONSISTENT_SYNTACTICALLY


def check_consistency(theory: Theory, resolve: Resolver) -> ConsistencyVerdict:
    """Syntactic contradiction scan: inconsistent iff some member formula
    is structurally the negation of another. Order-independent."""
    formulas = [resolve(m) for m in theory.members]
    seen = set(formulas)
    for f in formulas:
        if Not(f) in seen:
            return ConsistencyVerdict(
                ConsistencyStatus.INCONSISTENT, witness=(f, Not(f))
            )
    return ConsistencyVerdict(ConsistencyStatus.CONSISTENT_SYNTACTICALLY)
