"""Linear Hilbert-style proofs and their graph translation.

A linear proof is an ordered list of lines: hypothesis, axiom, or modus
ponens citing two earlier lines. The text form is one line each::

    hyp <formula>
    ax <formula>
    mp <i> <j>

with 1-based line numbers; the conclusion is the last line's formula.

``import_linear_proof`` realizes the constant-node-size construction: one
proposition node per distinct hypothesis, one proof node per mp line, and
axiom lines inlined as truisms on the proof nodes that consume them (they
never become standalone nodes). ``export_linear_proof`` inverts it by
topological linearization, so the two proof forms are interconvertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from claimgraph.errors import ClaimGraphError, InvalidGraphError, MalformedProofError
from claimgraph.formula import Formula, Implies, parse_formula, print_formula
from claimgraph.proofgraph import (
    DerivationReport,
    Graph,
    GraphNode,
    ProofNode,
    PropositionNode,
    Role,
    node_formula,
    verify_derivation,
)


@dataclass(frozen=True)
class HypLine:
    """Cites hypothesis ``hyp_index`` (0-based) of the proof's H list."""

    hyp_index: int


@dataclass(frozen=True)
class AxiomLine:
    formula: Formula


@dataclass(frozen=True)
class MPLine:
    """Modus ponens over two earlier lines (0-based indices, either order)."""

    first: int
    second: int


ProofLine = Union[HypLine, AxiomLine, MPLine]


@dataclass(frozen=True)
class LinearProof:
    hypotheses: tuple[Formula, ...]
    lines: tuple[ProofLine, ...]


def parse_linear_proof(text: str) -> LinearProof:
    """Parse the text form. Unknown directives, bad formulas, bad hypothesis
    indices and out-of-range mp references raise MalformedProofError citing
    the 1-based offending line."""
    hypotheses: list[Formula] = []
    lines: list[ProofLine] = []
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        head, _, rest = stripped.partition(" ")
        if head == "hyp":
            try:
                f = parse_formula(rest)
            except Exception as exc:
                raise MalformedProofError(f"bad hypothesis formula: {exc}", lineno)
            if f not in hypotheses:
                hypotheses.append(f)
            lines.append(HypLine(hypotheses.index(f)))
        elif head == "ax":
            try:
                f = parse_formula(rest)
            except Exception as exc:
                raise MalformedProofError(f"bad axiom formula: {exc}", lineno)
            lines.append(AxiomLine(f))
        elif head == "mp":
            parts = rest.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise MalformedProofError("mp needs two line numbers", lineno)
            i, j = (int(p) for p in parts)
            for ref in (i, j):
                if not 1 <= ref < len(lines) + 1:
                    raise MalformedProofError(
                        f"mp cites line {ref}, not strictly earlier", lineno
                    )
            lines.append(MPLine(i - 1, j - 1))
        else:
            raise MalformedProofError(f"unknown directive {head!r}", lineno)
    if not lines:
        raise MalformedProofError("empty proof", max(lineno, 1))
    return LinearProof(tuple(hypotheses), tuple(lines))


def format_linear_proof(proof: LinearProof) -> str:
    out = []
    for line in proof.lines:
        if isinstance(line, HypLine):
            out.append(f"hyp {print_formula(proof.hypotheses[line.hyp_index])}")
        elif isinstance(line, AxiomLine):
            out.append(f"ax {print_formula(line.formula)}")
        else:
            out.append(f"mp {line.first + 1} {line.second + 1}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class GraphFragment:
    """Import result: nodes in creation order (ids are list positions, so
    premise references always point backward) plus the root's id."""

    nodes: tuple[GraphNode, ...]
    root: int

    def as_graph(self) -> dict[int, GraphNode]:
        return {node.node_id: node for node in self.nodes}

    def verify(self) -> DerivationReport:
        return verify_derivation(self.as_graph(), self.root)


def _check_line_refs(proof: LinearProof) -> None:
    if not proof.lines:
        raise MalformedProofError("empty proof", 1)
    for idx, line in enumerate(proof.lines):
        if isinstance(line, HypLine):
            if not 0 <= line.hyp_index < len(proof.hypotheses):
                raise MalformedProofError("hypothesis index out of range", idx + 1)
        elif isinstance(line, MPLine):
            for ref in (line.first, line.second):
                if not 0 <= ref < idx:
                    raise MalformedProofError(
                        f"mp cites line {ref + 1}, not strictly earlier", idx + 1
                    )


def import_linear_proof(proof: LinearProof,
                        role: Role = Role.EXPLANATORY) -> GraphFragment:
    """Translate a linear proof into a graph fragment of constant-size nodes.

    Every mp line becomes a proof node whose inputs are the nodes of the
    cited lines, or inline truisms when the cited lines are axioms. An mp
    line whose inputs cannot form a modus ponens step (no way to read one
    as an implication of the other) is rejected, since its formula would be
    undefined. Axiom lines are never checked against the schemas here; a
    bogus one surfaces as a truism failure at verification time.

    A terminal axiom line consumed by no mp line has no proof-node shape, so
    it is imported as a proposition node (and thus shows up as a hypothesis
    of the resulting derivation).
    """
    _check_line_refs(proof)

    nodes: list[GraphNode] = []
    hyp_node_ids: dict[int, int] = {}  # hyp index -> node id
    # per line: ("node", node id) | ("ax", formula), filled as lines resolve
    slots: list[tuple[str, object]] = []

    def fresh_id() -> int:
        return len(nodes)

    for hyp_index in range(len(proof.hypotheses)):
        node = PropositionNode(fresh_id(), proof.hypotheses[hyp_index], role)
        hyp_node_ids[hyp_index] = node.node_id
        nodes.append(node)

    def line_formula(idx: int) -> Formula:
        kind, payload = slots[idx]
        if kind == "ax":
            return payload  # type: ignore[return-value]
        return node_formula(nodes[payload])  # type: ignore[index]

    for idx, line in enumerate(proof.lines):
        if isinstance(line, HypLine):
            slots.append(("node", hyp_node_ids[line.hyp_index]))
        elif isinstance(line, AxiomLine):
            slots.append(("ax", line.formula))
        else:
            fa, fb = line_formula(line.first), line_formula(line.second)
            conclusion = None
            for minor, major in ((fa, fb), (fb, fa)):
                if isinstance(major, Implies) and major.antecedent == minor:
                    conclusion = major.consequent
                    break
            if conclusion is None:
                raise MalformedProofError(
                    "mp inputs do not form a modus ponens step", idx + 1
                )
            premise_refs: list[int] = []
            truisms: list[Formula] = []
            for ref in (line.first, line.second):
                kind, payload = slots[ref]
                if kind == "node":
                    premise_refs.append(payload)  # type: ignore[arg-type]
                else:
                    truisms.append(payload)  # type: ignore[arg-type]
            node = ProofNode(fresh_id(), tuple(premise_refs), tuple(truisms), conclusion)
            nodes.append(node)
            slots.append(("node", node.node_id))

    # the conclusion line decides the root; a terminal unconsumed axiom has
    # no node, so give it a proposition node of its own
    kind, payload = slots[-1]
    if kind == "ax":
        node = PropositionNode(fresh_id(), proof.lines[-1].formula, role)
        nodes.append(node)
        root = node.node_id
    else:
        root = payload  # type: ignore[assignment]

    return GraphFragment(tuple(nodes), root)


def export_linear_proof(graph: Graph, root: int) -> LinearProof:
    """Topologically linearize a verified derivation back to linear form.

    Raises InvalidGraphError unless verify_derivation(graph, root) is valid.
    The exported proof covers exactly the nodes reachable from the root.
    """
    try:
        report = verify_derivation(graph, root)
    except ClaimGraphError as exc:
        raise InvalidGraphError(f"graph does not verify: {exc}") from exc
    if not report.valid:
        bad = [v.node_id for v in report.verdicts if not v.valid]
        raise InvalidGraphError(f"graph does not verify; invalid nodes: {bad}")

    hypotheses: list[Formula] = list(report.hypotheses)
    lines: list[ProofLine] = []
    line_of_node: dict[int, int] = {}

    # hypothesis lines first, one per distinct reached formula
    hyp_line_of_formula: dict[Formula, int] = {}
    for f in hypotheses:
        lines.append(HypLine(hypotheses.index(f)))
        hyp_line_of_formula[f] = len(lines) - 1

    def emit(node_id: int) -> int:
        if node_id in line_of_node:
            return line_of_node[node_id]
        node = graph[node_id]
        if isinstance(node, PropositionNode):
            line_idx = hyp_line_of_formula[node.formula]
        else:
            input_lines = [emit(ref) for ref in node.premise_refs]
            for truism in node.inline_truisms:
                lines.append(AxiomLine(truism))
                input_lines.append(len(lines) - 1)
            lines.append(MPLine(input_lines[0], input_lines[1]))
            line_idx = len(lines) - 1
        line_of_node[node_id] = line_idx
        return line_idx

    emit(root)
    return LinearProof(tuple(hypotheses), tuple(lines))
