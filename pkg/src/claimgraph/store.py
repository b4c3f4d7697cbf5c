"""Users, broadcast messages, comment edges, hotness ratings, theories,
and event-sourced persistence.

All mutation is serialized through one lock (the single logical writer);
reads work on immutable snapshots taken between writes. Every accepted
write is appended to a JSONL event log and fsynced before the call
returns, so an acknowledged write survives a crash. Replaying a log routes
each event through the same validation and application code as a live
write, which makes replay deterministic and identical to the state that
produced the log (timestamps excepted; they come from the store clock and
are not logged).

Event kinds, one JSON object per line::

    {"ev":"user","id":N,"handle":S}
    {"ev":"msg","id":N,"author":N,"body":S,"kind":"plain|prop|proof",
     "formula":S?,"role":"data|explanatory"?,"premises":[N]?,"truisms":[S]?,
     "conclusion":S?,"target":N?,"polarity":1|0|null?}
    {"ev":"hot","user":N,"msg":N,"score":F}
    {"ev":"auth","user":N,"flag":B}
    {"ev":"theory","id":N,"name":S,"members":[N]}

Agreement polarity rides the wire as 1 (agree), 0 (disagree) or null
(no opinion).
"""

from __future__ import annotations

import enum
import json
import math
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Union

from claimgraph.errors import (
    BadPolarityError,
    BadProofShapeError,
    ClaimGraphError,
    CorruptEventError,
    DuplicateHandleError,
    EmptyHandleError,
    NotAPropositionError,
    PermissionDeniedError,
    ScoreOutOfRangeError,
    UnknownAuthorError,
    UnknownMessageError,
    UnknownPremiseError,
    UnknownTargetError,
    UnknownUserError,
)
from claimgraph.formula import Formula, parse_formula, print_formula
from claimgraph.proofgraph import (
    GraphNode,
    ProofNode,
    PropositionNode,
    Role,
    Theory,
)


class Polarity(enum.Enum):
    """A comment's stance toward its target."""

    AGREE = "agree"
    DISAGREE = "disagree"
    NO_OPINION = "no_opinion"

    def wire(self) -> Optional[int]:
        if self is Polarity.AGREE:
            return 1
        if self is Polarity.DISAGREE:
            return 0
        return None

    @staticmethod
    def from_wire(value) -> "Polarity":
        if value is None:
            return Polarity.NO_OPINION
        if not isinstance(value, bool) and value == 1:
            return Polarity.AGREE
        if not isinstance(value, bool) and value == 0:
            return Polarity.DISAGREE
        raise BadPolarityError(f"polarity must be 1, 0 or null, got {value!r}")


@dataclass(frozen=True)
class User:
    user_id: int
    handle: str
    authoritative: bool = False


@dataclass(frozen=True)
class CommentEdge:
    target: int
    polarity: Polarity


@dataclass(frozen=True)
class PropositionPayload:
    formula: Formula
    role: Role


@dataclass(frozen=True)
class ProofPayload:
    premises: tuple[int, ...]
    truisms: tuple[Formula, ...]
    conclusion: Formula


Payload = Union[PropositionPayload, ProofPayload, None]


@dataclass(frozen=True)
class Message:
    message_id: int
    author: int
    created_at: float
    body: str
    payload: Payload = None
    comment: Optional[CommentEdge] = None

    @property
    def kind(self) -> str:
        if isinstance(self.payload, PropositionPayload):
            return "prop"
        if isinstance(self.payload, ProofPayload):
            return "proof"
        return "plain"


@dataclass(frozen=True)
class HotnessRating:
    user_id: int
    message_id: int
    score: float
    rated_at: float


@dataclass(frozen=True)
class Snapshot:
    """Immutable view of the whole store, safe to read concurrently."""

    users: Mapping[int, User]
    messages: Mapping[int, Message]
    ratings: Mapping[tuple[int, int], HotnessRating]
    theories: Mapping[int, Theory]
    comments_by_target: Mapping[int, tuple[int, ...]]
    ratings_by_message: Mapping[int, tuple[HotnessRating, ...]]


def aggregate_hotness(snapshot: Snapshot, message_id: int) -> float:
    """Arithmetic mean of the live ratings on a message; 0.0 when unrated."""
    if message_id not in snapshot.messages:
        raise UnknownMessageError(f"no message {message_id}")
    ratings = snapshot.ratings_by_message.get(message_id, ())
    if not ratings:
        return 0.0
    return sum(r.score for r in ratings) / len(ratings)


def claim_graph(snapshot: Snapshot) -> dict[int, GraphNode]:
    """The derivation graph carried by the store: every proposition and
    proof message as a node keyed by message id."""
    nodes: dict[int, GraphNode] = {}
    for mid, msg in snapshot.messages.items():
        if isinstance(msg.payload, PropositionPayload):
            nodes[mid] = PropositionNode(mid, msg.payload.formula, msg.payload.role)
        elif isinstance(msg.payload, ProofPayload):
            nodes[mid] = ProofNode(
                mid, msg.payload.premises, msg.payload.truisms, msg.payload.conclusion
            )
    return nodes


class MessageStore:
    """The platform substrate. Opening a store on an existing log replays
    it first; a missing log starts empty. ``log_path=None`` keeps the store
    purely in memory."""

    def __init__(self, log_path: Union[str, Path, None] = None, *,
                 admin_ids: Iterable[int] = (),
                 clock: Callable[[], float] = time.time):
        self.admin_ids = frozenset(admin_ids)
        self._clock = clock
        self._lock = threading.Lock()
        self._users: dict[int, User] = {}
        self._handles: dict[str, int] = {}
        self._messages: dict[int, Message] = {}
        self._ratings: dict[tuple[int, int], HotnessRating] = {}
        self._theories: dict[int, Theory] = {}
        self._comments_by_target: dict[int, list[int]] = {}
        self._next_user_id = 1
        self._next_message_id = 1
        self._next_theory_id = 1
        self._log = None
        if log_path is not None:
            path = Path(log_path)
            if path.exists():
                with path.open("r", encoding="utf-8") as fh:
                    self._replay_lines(fh)
            path.parent.mkdir(parents=True, exist_ok=True)
            self._log = path.open("ab")

    # -- event plumbing ------------------------------------------------

    def _append_event(self, event: dict) -> None:
        if self._log is None:
            return
        line = json.dumps(event, separators=(",", ":")) + "\n"
        self._log.write(line.encode("utf-8"))
        self._log.flush()
        os.fsync(self._log.fileno())

    def _replay_lines(self, lines: Iterable[str]) -> None:
        for lineno, raw in enumerate(lines, start=1):
            if not raw.strip():
                raise CorruptEventError("blank line", lineno)
            try:
                event = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise CorruptEventError(f"bad JSON: {exc.msg}", lineno) from None
            try:
                self._apply_event(event)
            except ClaimGraphError as exc:
                raise CorruptEventError(str(exc), lineno) from None
            except (KeyError, TypeError, ValueError) as exc:
                raise CorruptEventError(f"bad event: {exc}", lineno) from None

    def _apply_event(self, event: dict) -> None:
        kind = event["ev"]
        if kind == "user":
            self._apply_user(event["handle"], forced_id=int(event["id"]))
        elif kind == "msg":
            payload: Payload = None
            if event["kind"] == "prop":
                payload = PropositionPayload(
                    parse_formula(event["formula"]), Role(event["role"])
                )
            elif event["kind"] == "proof":
                payload = ProofPayload(
                    tuple(int(p) for p in event["premises"]),
                    tuple(parse_formula(t) for t in event["truisms"]),
                    parse_formula(event["conclusion"]),
                )
            elif event["kind"] != "plain":
                raise ValueError(f"unknown message kind {event['kind']!r}")
            comment = None
            if "target" in event:
                comment = CommentEdge(
                    int(event["target"]), Polarity.from_wire(event["polarity"])
                )
            self._apply_message(
                int(event["author"]), str(event["body"]), payload, comment,
                forced_id=int(event["id"]),
            )
        elif kind == "hot":
            self._apply_rating(int(event["user"]), int(event["msg"]), event["score"])
        elif kind == "auth":
            self._apply_auth(int(event["user"]), bool(event["flag"]))
        elif kind == "theory":
            self._apply_theory(
                str(event["name"]),
                tuple(int(m) for m in event["members"]),
                forced_id=int(event["id"]),
            )
        else:
            raise ValueError(f"unknown event kind {kind!r}")

    # -- validated appliers, shared by live writes and replay -----------

    def _take_id(self, forced_id: Optional[int], counter_attr: str, what: str) -> int:
        current = getattr(self, counter_attr)
        if forced_id is None:
            new_id = current
        else:
            if forced_id < current:
                raise ClaimGraphError(f"{what} id {forced_id} not increasing")
            new_id = forced_id
        setattr(self, counter_attr, new_id + 1)
        return new_id

    def _apply_user(self, handle: str, forced_id: Optional[int] = None) -> int:
        if not isinstance(handle, str) or not handle.strip():
            raise EmptyHandleError("handle must be non-empty", field="handle")
        if handle in self._handles:
            raise DuplicateHandleError(f"handle {handle!r} taken", field="handle")
        user_id = self._take_id(forced_id, "_next_user_id", "user")
        self._users[user_id] = User(user_id, handle)
        self._handles[handle] = user_id
        return user_id

    def _apply_message(self, author: int, body: str, payload: Payload,
                       comment: Optional[CommentEdge],
                       forced_id: Optional[int] = None) -> int:
        if author not in self._users:
            raise UnknownAuthorError(f"no user {author}", field="author")
        if comment is not None and comment.target not in self._messages:
            raise UnknownTargetError(f"no message {comment.target}", field="target")
        if isinstance(payload, ProofPayload):
            if len(payload.premises) + len(payload.truisms) != 2 or len(payload.truisms) > 2:
                raise BadProofShapeError(
                    "a proof node takes exactly two inputs (premises + truisms)"
                )
            for premise in payload.premises:
                if premise not in self._messages:
                    raise UnknownPremiseError(f"no message {premise}", field="premises")
        message_id = self._take_id(forced_id, "_next_message_id", "message")
        self._messages[message_id] = Message(
            message_id, author, self._clock(), body, payload, comment
        )
        if comment is not None:
            self._comments_by_target.setdefault(comment.target, []).append(message_id)
        return message_id

    def _apply_rating(self, user: int, message: int, score) -> None:
        if user not in self._users:
            raise UnknownUserError(f"no user {user}", field="user")
        if message not in self._messages:
            raise UnknownMessageError(f"no message {message}", field="msg")
        if isinstance(score, bool) or not isinstance(score, (int, float)):
            raise ScoreOutOfRangeError("score must be a number", field="score")
        score = float(score)
        if math.isnan(score) or not 0.0 <= score <= 1.0:
            raise ScoreOutOfRangeError(
                f"score must lie in [0, 1], got {score}", field="score"
            )
        self._ratings[(user, message)] = HotnessRating(
            user, message, score, self._clock()
        )

    def _apply_auth(self, user: int, flag: bool) -> None:
        existing = self._users.get(user)
        if existing is None:
            raise UnknownUserError(f"no user {user}", field="user")
        self._users[user] = User(existing.user_id, existing.handle, flag)

    def _apply_theory(self, name: str, members: tuple[int, ...],
                      forced_id: Optional[int] = None) -> int:
        for member in members:
            msg = self._messages.get(member)
            if msg is None:
                raise UnknownMessageError(f"no message {member}", field="members")
            if not isinstance(msg.payload, PropositionPayload):
                raise NotAPropositionError(
                    f"message {member} is not a proposition", field="members"
                )
        theory_id = self._take_id(forced_id, "_next_theory_id", "theory")
        self._theories[theory_id] = Theory(theory_id, name, members)
        return theory_id

    # -- public mutators (validate, apply, then durably log) ------------

    def add_user(self, handle: str) -> int:
        with self._lock:
            user_id = self._apply_user(handle)
            self._append_event({"ev": "user", "id": user_id, "handle": handle})
            return user_id

    def post_message(self, author: int, body: str, payload: Payload = None,
                     comment: Optional[CommentEdge] = None) -> int:
        with self._lock:
            message_id = self._apply_message(author, body, payload, comment)
            event = {
                "ev": "msg", "id": message_id, "author": author,
                "body": body, "kind": self._messages[message_id].kind,
            }
            if isinstance(payload, PropositionPayload):
                event["formula"] = print_formula(payload.formula)
                event["role"] = payload.role.value
            elif isinstance(payload, ProofPayload):
                event["premises"] = list(payload.premises)
                event["truisms"] = [print_formula(t) for t in payload.truisms]
                event["conclusion"] = print_formula(payload.conclusion)
            if comment is not None:
                event["target"] = comment.target
                event["polarity"] = comment.polarity.wire()
            self._append_event(event)
            return message_id

    def rate_hotness(self, user: int, message: int, score: float) -> None:
        with self._lock:
            self._apply_rating(user, message, score)
            self._append_event(
                {"ev": "hot", "user": user, "msg": message,
                 "score": self._ratings[(user, message)].score}
            )

    def set_authoritative(self, admin: int, user: int, flag: bool) -> None:
        with self._lock:
            if admin not in self.admin_ids:
                raise PermissionDeniedError(
                    f"user {admin} is not an admin", field="admin"
                )
            self._apply_auth(user, flag)
            self._append_event({"ev": "auth", "user": user, "flag": bool(flag)})

    def add_theory(self, name: str, members: Iterable[int]) -> int:
        with self._lock:
            theory_id = self._apply_theory(str(name), tuple(members))
            theory = self._theories[theory_id]
            self._append_event(
                {"ev": "theory", "id": theory_id, "name": theory.name,
                 "members": list(theory.members)}
            )
            return theory_id

    # -- reads -----------------------------------------------------------

    def snapshot(self) -> Snapshot:
        with self._lock:
            return Snapshot(
                users=dict(self._users),
                messages=dict(self._messages),
                ratings=dict(self._ratings),
                theories=dict(self._theories),
                comments_by_target={
                    t: tuple(ids) for t, ids in self._comments_by_target.items()
                },
                ratings_by_message=self._ratings_by_message(),
            )

    def _ratings_by_message(self) -> dict[int, tuple[HotnessRating, ...]]:
        index: dict[int, list[HotnessRating]] = {}
        for rating in self._ratings.values():
            index.setdefault(rating.message_id, []).append(rating)
        return {mid: tuple(rs) for mid, rs in index.items()}

    def close(self) -> None:
        if self._log is not None:
            self._log.close()
            self._log = None

    def __enter__(self) -> "MessageStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def replay(lines: Iterable[str], *, clock: Callable[[], float] = time.time) -> Snapshot:
    """Rebuild the state a log describes and return it as a snapshot.

    Raises CorruptEventError, citing the 1-based line number, on the first
    unreadable or invalid event.
    """
    store = MessageStore(clock=clock)
    store._replay_lines(lines)
    return store.snapshot()
