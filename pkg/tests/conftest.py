"""Shared helpers: independent oracles and random store builders.

The oracles here deliberately avoid the code paths they judge. Entailment
is recomputed by direct recursive evaluation over every assignment (the
kernel compiles to postfix programs instead), and the listing oracle works
straight off snapshot primitives (the query engine goes through its own
aggregation and sort).
"""

from __future__ import annotations

import itertools
import random

from claimgraph.formula import Formula, atoms, eval_formula
from claimgraph.store import (
    CommentEdge,
    MessageStore,
    Polarity,
    PropositionPayload,
    Snapshot,
)
from claimgraph.proofgraph import Role
from claimgraph.formula import Atom


def enumerate_entailment(hypotheses: list[Formula], goal: Formula) -> bool:
    """Brute-force semantic entailment, one recursive eval per assignment."""
    names: set[str] = set(atoms(goal))
    for h in hypotheses:
        names |= atoms(h)
    ordered = sorted(names)
    for values in itertools.product((False, True), repeat=len(ordered)):
        env = dict(zip(ordered, values))
        if all(eval_formula(h, env) for h in hypotheses) and \
                not eval_formula(goal, env):
            return False
    return True


def listing_oracle(snapshot: Snapshot, target: int, polarity: Polarity,
                   limit=None) -> list[tuple[int, float, bool]]:
    """Reference best-arguments: filter, partition, sort, concatenate.

    Returns (message id, hotness, authoritative) rows computed from the raw
    ratings table, bypassing the store's aggregation index entirely.
    """
    rows = []
    for mid in sorted(snapshot.messages):
        message = snapshot.messages[mid]
        if message.comment is None or message.comment.target != target:
            continue
        if message.comment.polarity is not polarity:
            continue
        scores = [r.score for (_, m), r in snapshot.ratings.items() if m == mid]
        hotness = sum(scores) / len(scores) if scores else 0.0
        rows.append((mid, hotness, snapshot.users[message.author].authoritative))
    front = sorted([r for r in rows if r[2]], key=lambda r: (-r[1], r[0]))
    rest = sorted([r for r in rows if not r[2]], key=lambda r: (-r[1], r[0]))
    ordered = front + rest
    return ordered if limit is None else ordered[:limit]


def build_random_store(rng: random.Random, *, max_users: int = 50,
                       max_messages: int = 200) -> MessageStore:
    """In-memory store with random users, comments, ratings, and auth flags.

    Hotness values are drawn from a small grid so ties actually occur and
    the id tie-break gets exercised.
    """
    store = MessageStore(admin_ids={1})  # first user added gets id 1
    user_ids = [store.add_user(f"user{i}") for i in range(rng.randint(1, max_users))]
    for uid in user_ids:
        if rng.random() < 0.2:
            store.set_authoritative(user_ids[0], uid, True)

    message_ids: list[int] = []
    grid = [0.0, 0.25, 0.5, 0.5, 0.75, 1.0]
    for i in range(rng.randint(1, max_messages)):
        author = rng.choice(user_ids)
        comment = None
        if message_ids and rng.random() < 0.75:
            comment = CommentEdge(
                rng.choice(message_ids),
                rng.choice((Polarity.AGREE, Polarity.DISAGREE,
                            Polarity.NO_OPINION)),
            )
        payload = None
        if rng.random() < 0.15:
            payload = PropositionPayload(Atom(f"claim{i}"), Role.DATA)
        mid = store.post_message(author, f"body {i}", payload, comment)
        message_ids.append(mid)
        for _ in range(rng.randint(0, 3)):
            score = rng.choice(grid) if rng.random() < 0.7 else rng.random()
            store.rate_hotness(rng.choice(user_ids), mid, score)
    return store
