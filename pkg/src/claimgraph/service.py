"""HTTP surface over the store, query engine, and proof kernel.

Endpoints (JSON unless noted)::

    POST /users {handle} -> {id}
    POST /messages {author, body, kind, ...} -> {id}
    POST /ratings {user, msg, score} -> {}
    POST /admin/authoritative {admin, user, flag} -> {}
    GET  /arguments?target=N&polarity=(1|0|null)&limit=K
    GET  /messages/N
    GET  /proofs/N/verify[?oracle=1]
    POST /proofs/import?author=N (linear-proof text body) -> {root_id, message_ids}
    GET  /theories/N/consistency
    POST /theories {name, members} -> {id}
    GET  /users, GET /messages, GET /theories (listing endpoints for clients)

Every mutating request is durably logged by the store before the response
is sent. Reads run on immutable snapshots. Errors come back as
``{"error": {"code", "message", "field"}}`` with a status derived from
the code: unknown-* map to 404, permission problems to 403, handle
collisions to 409, everything else to 400.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Optional, Union

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from claimgraph.errors import (
    AtomCapExceededError,
    BadPolarityError,
    BadRequestError,
    ClaimGraphError,
    NotAProofError,
    UnknownAuthorError,
    UnknownMessageError,
    UnknownTheoryError,
)
from claimgraph.formula import parse_formula, print_formula
from claimgraph.kernel import DEFAULT_ATOM_CAP, entails
from claimgraph.linear import import_linear_proof, parse_linear_proof
from claimgraph.proofgraph import (
    ProofNode,
    PropositionNode,
    Role,
    check_consistency,
    verify_derivation,
)
from claimgraph.query import best_arguments
from claimgraph.store import (
    CommentEdge,
    Message,
    MessageStore,
    Payload,
    Polarity,
    PropositionPayload,
    ProofPayload,
    Snapshot,
    aggregate_hotness,
    claim_graph,
)

_STATUS_BY_CODE = {
    "unknown_user": 404,
    "unknown_author": 404,
    "unknown_target": 404,
    "unknown_message": 404,
    "unknown_premise": 404,
    "unknown_theory": 404,
    "permission_denied": 403,
    "duplicate_handle": 409,
}

_POLARITY_PARAM = {"1": Polarity.AGREE, "0": Polarity.DISAGREE,
                   "null": Polarity.NO_OPINION}


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8000
    host: str = "127.0.0.1"
    log_path: Optional[Path] = None
    admin_ids: frozenset[int] = frozenset()
    atom_cap: int = DEFAULT_ATOM_CAP
    ui_dir: Optional[Path] = None


class UserBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    handle: str


class MessageBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    author: int
    body: str
    kind: Literal["plain", "prop", "proof"] = "plain"
    formula: Optional[str] = None
    role: Optional[Literal["data", "explanatory"]] = None
    premises: Optional[list[int]] = None
    truisms: Optional[list[str]] = None
    conclusion: Optional[str] = None
    target: Optional[int] = None
    polarity: Optional[int] = None


class RatingBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    user: int
    msg: int
    score: float


class AuthBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    admin: int
    user: int
    flag: bool


class TheoryBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    name: str
    members: list[int]


def _payload_from_body(body: MessageBody) -> Payload:
    def forbid(kind: str, **fields) -> None:
        for name, value in fields.items():
            if value is not None:
                raise BadRequestError(
                    f"{name} not allowed on a {kind} message", field=name
                )

    if body.kind == "prop":
        if body.formula is None:
            raise BadRequestError("prop message needs a formula", field="formula")
        forbid("prop", premises=body.premises, truisms=body.truisms,
               conclusion=body.conclusion)
        role = Role(body.role) if body.role is not None else Role.EXPLANATORY
        return PropositionPayload(parse_formula(body.formula), role)
    if body.kind == "proof":
        if body.premises is None or body.truisms is None or body.conclusion is None:
            raise BadRequestError(
                "proof message needs premises, truisms and conclusion",
                field="conclusion" if body.conclusion is None else
                ("premises" if body.premises is None else "truisms"),
            )
        forbid("proof", formula=body.formula, role=body.role)
        return ProofPayload(
            tuple(body.premises),
            tuple(parse_formula(t) for t in body.truisms),
            parse_formula(body.conclusion),
        )
    forbid("plain", formula=body.formula, role=body.role, premises=body.premises,
           truisms=body.truisms, conclusion=body.conclusion)
    return None


def _comment_from_body(body: MessageBody) -> Optional[CommentEdge]:
    has_target = "target" in body.model_fields_set
    has_polarity = "polarity" in body.model_fields_set
    if not has_target:
        if has_polarity:
            raise BadPolarityError("polarity requires a target", field="target")
        return None
    if body.target is None:
        raise BadRequestError("target must be a message id", field="target")
    if not has_polarity:
        raise BadPolarityError(
            "a comment must state its polarity (1, 0 or null)", field="polarity"
        )
    return CommentEdge(body.target, Polarity.from_wire(body.polarity))


def message_record(message: Message) -> dict:
    """One canonical wire encoding for a message, mirroring the event log."""
    record: dict = {
        "id": message.message_id,
        "author": message.author,
        "body": message.body,
        "kind": message.kind,
    }
    if isinstance(message.payload, PropositionPayload):
        record["formula"] = print_formula(message.payload.formula)
        record["role"] = message.payload.role.value
    elif isinstance(message.payload, ProofPayload):
        record["premises"] = list(message.payload.premises)
        record["truisms"] = [print_formula(t) for t in message.payload.truisms]
        record["conclusion"] = print_formula(message.payload.conclusion)
    if message.comment is not None:
        record["target"] = message.comment.target
        record["polarity"] = message.comment.polarity.wire()
    return record


def argument_record(listing) -> dict:
    return {
        "target": listing.target,
        "polarity": listing.polarity.wire(),
        "entries": [
            {"id": e.message_id, "hotness": e.hotness,
             "authoritative": e.authoritative}
            for e in listing.entries
        ],
    }


def consistency_record(snapshot: Snapshot, theory_id: int) -> dict:
    theory = snapshot.theories.get(theory_id)
    if theory is None:
        raise UnknownTheoryError(f"no theory {theory_id}")

    def resolve(member: int):
        return snapshot.messages[member].payload.formula

    verdict = check_consistency(theory, resolve)
    return {
        "theory": theory_id,
        "status": verdict.status.value,
        "witness": (
            None if verdict.witness is None
            else [print_formula(f) for f in verdict.witness]
        ),
    }


def import_proof_messages(store: MessageStore, text: str, author: int,
                          role: Role = Role.EXPLANATORY) -> dict:
    """Parse linear-proof text and post its nodes as messages by ``author``,
    remapping fragment-local ids to the assigned message ids."""
    fragment = import_linear_proof(parse_linear_proof(text), role)
    if author not in store.snapshot().users:
        raise UnknownAuthorError(f"no user {author}", field="author")
    id_map: dict[int, int] = {}
    created: list[int] = []
    for node in fragment.nodes:
        if isinstance(node, PropositionNode):
            payload: Payload = PropositionPayload(node.formula, node.role)
        else:
            payload = ProofPayload(
                tuple(id_map[r] for r in node.premise_refs),
                node.inline_truisms, node.conclusion,
            )
        message_id = store.post_message(author, "", payload)
        id_map[node.node_id] = message_id
        created.append(message_id)
    return {"root_id": id_map[fragment.root], "message_ids": created}


def verify_report(snapshot: Snapshot, message_id: int, *,
                  oracle: bool = False, atom_cap: int = DEFAULT_ATOM_CAP) -> dict:
    message = snapshot.messages.get(message_id)
    if message is None:
        raise UnknownMessageError(f"no message {message_id}")
    if not isinstance(message.payload, ProofPayload):
        raise NotAProofError(f"message {message_id} carries no proof")
    graph = claim_graph(snapshot)
    base: dict = {"root": message_id, "valid": False, "conclusion": None,
                  "hypotheses": [], "nodes": [], "error": None}
    try:
        report = verify_derivation(graph, message_id)
    except ClaimGraphError as exc:
        base["error"] = {"code": exc.code, "message": str(exc),
                         "node": getattr(exc, "node_id", None)}
        return base

    reached = {v.node_id for v in report.verdicts}
    reached.update(
        ref for nid in reached if isinstance(graph.get(nid), ProofNode)
        for ref in graph[nid].premise_refs
    )
    nodes = []
    verdicts = {v.node_id: v for v in report.verdicts}
    for node_id in sorted(reached):
        node = graph[node_id]
        if isinstance(node, PropositionNode):
            nodes.append({
                "id": node_id, "kind": "prop",
                "formula": print_formula(node.formula),
                "role": node.role.value, "valid": True,
                "reason": None, "detail": None,
            })
        else:
            verdict = verdicts[node_id]
            nodes.append({
                "id": node_id, "kind": "proof",
                "premises": list(node.premise_refs),
                "truisms": [print_formula(t) for t in node.inline_truisms],
                "conclusion": print_formula(node.conclusion),
                "valid": verdict.valid,
                "reason": verdict.reason, "detail": verdict.detail,
            })
    base.update(
        valid=report.valid,
        conclusion=print_formula(report.conclusion),
        hypotheses=[print_formula(h) for h in report.hypotheses],
        nodes=nodes,
    )
    if oracle and report.valid:
        try:
            base["entailed"] = entails(
                list(report.hypotheses), graph[message_id].conclusion,
                atom_cap=atom_cap,
            )
        except AtomCapExceededError:
            base["entailed"] = None
    return base


def create_app(store: MessageStore, *,
               atom_cap: int = DEFAULT_ATOM_CAP,
               ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="claimgraph", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.exception_handler(ClaimGraphError)
    async def _domain_error(_req: Request, exc: ClaimGraphError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": str(exc),
                               "field": exc.field}},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = first.get("loc", ())
        field = str(loc[-1]) if loc else None
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "bad_request",
                               "message": first.get("msg", "invalid request"),
                               "field": field}},
        )

    @app.post("/users")
    async def post_user(body: UserBody):
        return {"id": store.add_user(body.handle)}

    @app.get("/users")
    async def list_users():
        snapshot = store.snapshot()
        return {"users": [
            {"id": u.user_id, "handle": u.handle, "authoritative": u.authoritative}
            for u in sorted(snapshot.users.values(), key=lambda u: u.user_id)
        ]}

    @app.post("/messages")
    async def post_message(body: MessageBody):
        payload = _payload_from_body(body)
        comment = _comment_from_body(body)
        return {"id": store.post_message(body.author, body.body, payload, comment)}

    @app.get("/messages")
    async def list_messages(kind: Optional[str] = None):
        snapshot = store.snapshot()
        records = [
            message_record(m)
            for m in sorted(snapshot.messages.values(), key=lambda m: m.message_id)
            if kind is None or m.kind == kind
        ]
        return {"messages": records}

    @app.get("/messages/{message_id}")
    async def get_message(message_id: int):
        snapshot = store.snapshot()
        message = snapshot.messages.get(message_id)
        if message is None:
            raise UnknownMessageError(f"no message {message_id}")
        record = message_record(message)
        record["hotness"] = aggregate_hotness(snapshot, message_id)
        return record

    @app.post("/ratings")
    async def post_rating(body: RatingBody):
        store.rate_hotness(body.user, body.msg, body.score)
        return {}

    @app.post("/admin/authoritative")
    async def post_authoritative(body: AuthBody):
        store.set_authoritative(body.admin, body.user, body.flag)
        return {}

    @app.get("/arguments")
    async def get_arguments(target: int, polarity: str,
                            limit: Optional[int] = Query(default=None, ge=0)):
        wanted = _POLARITY_PARAM.get(polarity)
        if wanted is None:
            raise BadPolarityError(
                f"polarity must be 1, 0 or null, got {polarity!r}", field="polarity"
            )
        snapshot = store.snapshot()
        return argument_record(best_arguments(snapshot, target, wanted, limit))

    @app.get("/proofs/{message_id}/verify")
    async def get_verify(message_id: int, oracle: bool = False):
        snapshot = store.snapshot()
        return verify_report(snapshot, message_id, oracle=oracle,
                             atom_cap=atom_cap)

    @app.post("/proofs/import")
    async def post_import(request: Request, author: int,
                          role: str = Role.EXPLANATORY.value):
        text = (await request.body()).decode("utf-8")
        return import_proof_messages(store, text, author, Role(role))

    @app.post("/theories")
    async def post_theory(body: TheoryBody):
        return {"id": store.add_theory(body.name, body.members)}

    @app.get("/theories")
    async def list_theories():
        snapshot = store.snapshot()
        return {"theories": [
            {"id": t.theory_id, "name": t.name, "members": list(t.members)}
            for t in sorted(snapshot.theories.values(), key=lambda t: t.theory_id)
        ]}

    @app.get("/theories/{theory_id}/consistency")
    async def get_consistency(theory_id: int):
        return consistency_record(store.snapshot(), theory_id)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted; flushes the log on shutdown."""
    import uvicorn

    store = MessageStore(config.log_path, admin_ids=config.admin_ids)
    app = create_app(store, atom_cap=config.atom_cap, ui_dir=config.ui_dir)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    finally:
        store.close()
