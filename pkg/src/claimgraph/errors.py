"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the API layer and
the CLI can speak one vocabulary.
"""

from __future__ import annotations


class ClaimGraphError(Exception):
    code = "error"

    def __init__(self, message: str, *, field: str | None = None):
        super().__init__(message)
        self.field = field


class FormulaSyntaxError(ClaimGraphError):
    """Malformed formula text; ``offset`` is the byte offset of the problem."""

    code = "formula_syntax"

    def __init__(self, message: str, offset: int, *, field: str | None = None):
        super().__init__(f"{message} at offset {offset}", field=field)
        self.offset = offset


class MissingAtomError(ClaimGraphError):
    code = "missing_atom"


class AtomCapExceededError(ClaimGraphError):
    """The brute-force oracle refuses inputs with too many atoms.

    Signals that the oracle is inapplicable, never that the entailment fails.
    """

    code = "atom_cap_exceeded"


class NotAnImplicationError(ClaimGraphError):
    code = "not_an_implication"


class PremiseMismatchError(ClaimGraphError):
    code = "premise_mismatch"


class DanglingReferenceError(ClaimGraphError):
    code = "dangling_reference"

    def __init__(self, message: str, node_id: int | None = None):
        super().__init__(message)
        self.node_id = node_id


class CycleError(ClaimGraphError):
    """Premise relation is cyclic; ``node_id`` names one node on the cycle."""

    code = "cycle_detected"

    def __init__(self, node_id: int):
        super().__init__(f"premise cycle through node {node_id}")
        self.node_id = node_id


class MalformedProofError(ClaimGraphError):
    """Bad linear proof; ``line`` is the offending 1-based line number."""

    code = "malformed_proof"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class InvalidGraphError(ClaimGraphError):
    code = "invalid_graph"


class BadProofShapeError(ClaimGraphError):
    code = "bad_proof_shape"


class UnknownUserError(ClaimGraphError):
    code = "unknown_user"


class UnknownAuthorError(ClaimGraphError):
    code = "unknown_author"


class UnknownTargetError(ClaimGraphError):
    code = "unknown_target"


class UnknownMessageError(ClaimGraphError):
    code = "unknown_message"


class UnknownPremiseError(ClaimGraphError):
    code = "unknown_premise"


class UnknownTheoryError(ClaimGraphError):
    code = "unknown_theory"


class NotAPropositionError(ClaimGraphError):
    code = "not_a_proposition"


class NotAProofError(ClaimGraphError):
    code = "not_a_proof"


class DuplicateHandleError(ClaimGraphError):
    code = "duplicate_handle"


class EmptyHandleError(ClaimGraphError):
    code = "empty_handle"


class ScoreOutOfRangeError(ClaimGraphError):
    code = "score_out_of_range"


class PermissionDeniedError(ClaimGraphError):
    code = "permission_denied"


class CorruptEventError(ClaimGraphError):
    """Unreadable event log; ``line`` is the offending 1-based line number."""

    code = "corrupt_event"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadPolarityError(ClaimGraphError):
    code = "bad_polarity"


class BadRequestError(ClaimGraphError):
    """Request body or parameters do not fit the endpoint's shape."""

    code = "bad_request"
