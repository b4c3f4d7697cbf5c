"""Ranked retrieval of the best arguments for or against a message.

The listing for (target, polarity) is computed by filtering the target's
comments to the exact requested polarity, splitting authoritative authors
from the rest, sorting each group by aggregate hotness (descending, ties
broken by ascending message id), and concatenating with the authoritative
group first. The limit truncates after that ordering is fixed, so an
authoritative comment is never displaced by a hotter regular one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from claimgraph.errors import UnknownTargetError
from claimgraph.store import Polarity, Snapshot, aggregate_hotness


@dataclass(frozen=True)
class ArgumentEntry:
    message_id: int
    hotness: float
    authoritative: bool


@dataclass(frozen=True)
class ArgumentListing:
    target: int
    polarity: Polarity
    entries: tuple[ArgumentEntry, ...]


PostFilter = Callable[[Sequence[ArgumentEntry]], Sequence[ArgumentEntry]]


def best_arguments(snapshot: Snapshot, target: int, polarity: Polarity,
                   limit: Optional[int] = None,
                   post_filter: Optional[PostFilter] = None) -> ArgumentListing:
    """Top comments on ``target`` carrying exactly ``polarity``.

    ``limit=None`` returns the full ordering; ``post_filter`` may reorder
    or drop entries (personalized re-ranking) before the limit applies.
    """
    if target not in snapshot.messages:
        raise UnknownTargetError(f"no message {target}", field="target")
    if limit is not None and limit < 0:
        raise ValueError("limit must be >= 0")

    entries = []
    for mid in snapshot.comments_by_target.get(target, ()):
        message = snapshot.messages[mid]
        if message.comment is None or message.comment.polarity is not polarity:
            continue
        entries.append(
            ArgumentEntry(
                message_id=mid,
                hotness=aggregate_hotness(snapshot, mid),
                authoritative=snapshot.users[message.author].authoritative,
            )
        )

    def hotness_order(group: list[ArgumentEntry]) -> list[ArgumentEntry]:
        return sorted(group, key=lambda e: (-e.hotness, e.message_id))

    ordered = hotness_order([e for e in entries if e.authoritative]) + \
        hotness_order([e for e in entries if not e.authoritative])
    if post_filter is not None:
        ordered = list(post_filter(ordered))
    if limit is not None:
        ordered = ordered[:limit]
    return ArgumentListing(target, polarity, tuple(ordered))


def argument_counts(snapshot: Snapshot, target: int) -> tuple[int, int, int]:
    """Live comment counts on ``target`` as (agree, disagree, no-opinion)."""
    if target not in snapshot.messages:
        raise UnknownTargetError(f"no message {target}", field="target")
    counts = {p: 0 for p in Polarity}
    for mid in snapshot.comments_by_target.get(target, ()):
        comment = snapshot.messages[mid].comment
        if comment is not None:
            counts[comment.polarity] += 1
    return (counts[Polarity.AGREE], counts[Polarity.DISAGREE],
            counts[Polarity.NO_OPINION])
