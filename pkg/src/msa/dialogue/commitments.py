"""Commitment lifecycle and responsibility chain tracking.

Commitments follow a small state machine:

    active -> updated | transferred | closed | abandoned
    updated -> updated | transferred | closed | abandoned
    transferred, closed, abandoned -> (terminal)

``abandoned`` is terminal and flagged in reports; nothing ever re-enters
``active``. Closing is a deliberate act recorded by whoever runs the
analysis, never something the tracker infers on its own. The silent
abandonment detector below therefore only reports candidates and mutates
nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import TYPE_CHECKING

from ..errors import InvalidTransition
from ..msl.graph import ResponsibilityEdge, ResponsibilityGraph
from ..text import content_tokens
from .transcript import DialogueTurn

if TYPE_CHECKING:
    from .transcript import Transcript


class CommitmentStatus(Enum):
    ACTIVE = "active"
    UPDATED = "updated"
    TRANSFERRED = "transferred"
    CLOSED = "closed"
    ABANDONED = "abandoned"


_ALLOWED = {
    CommitmentStatus.ACTIVE: {
        CommitmentStatus.UPDATED,
        CommitmentStatus.TRANSFERRED,
        CommitmentStatus.CLOSED,
        CommitmentStatus.ABANDONED,
    },
    CommitmentStatus.UPDATED: {
        CommitmentStatus.UPDATED,
        CommitmentStatus.TRANSFERRED,
        CommitmentStatus.CLOSED,
        CommitmentStatus.ABANDONED,
    },
    CommitmentStatus.TRANSFERRED: set(),
    CommitmentStatus.CLOSED: set(),
    CommitmentStatus.ABANDONED: set(),
}

LIVE_STATUSES = (CommitmentStatus.ACTIVE, CommitmentStatus.UPDATED)


@dataclass(frozen=True)
class StatusChange:
    status: CommitmentStatus
    turn_index: int


@dataclass(frozen=True)
class Commitment:
    id: str
    holder: str
    text: str
    status: CommitmentStatus
    created_at: int
    history: tuple[StatusChange, ...] = ()
    transferred_to: str | None = None

    def transition(
        self, status: CommitmentStatus, turn_index: int, target: str | None = None
    ) -> "Commitment":
        if status not in _ALLOWED[self.status]:
            raise InvalidTransition(
                f"commitment {self.id}: {self.status.value} -> {status.value} is not allowed"
            )
        if status is CommitmentStatus.TRANSFERRED and not target:
            raise InvalidTransition(f"commitment {self.id}: transfer needs a target speaker")
        return replace(
            self,
            status=status,
            history=self.history + (StatusChange(status=status, turn_index=turn_index),),
            transferred_to=target if status is CommitmentStatus.TRANSFERRED else self.transferred_to,
        )

    @property
    def is_live(self) -> bool:
        return self.status in LIVE_STATUSES


# Commitment patterns are matched case-sensitively, mirroring the legacy
# membership check. The transfer phrase comes from the delegation guideline.
DEFAULT_PATTERNS_COMMIT = ("I will", "will", "should")
DEFAULT_PATTERNS_TRANSFER = ("I'll leave that to",)


@dataclass(frozen=True)
class PatternSet:
    commitment: tuple[str, ...] = DEFAULT_PATTERNS_COMMIT
    transfer: tuple[str, ...] = DEFAULT_PATTERNS_TRANSFER
    case_sensitive: bool = True

    def _hit(self, patterns: tuple[str, ...], text: str) -> bool:
        if self.case_sensitive:
            return any(pat in text for pat in patterns)
        lowered = text.lower()
        return any(pat.lower() in lowered for pat in patterns)

    def matches_commitment(self, text: str) -> bool:
        return self._hit(self.commitment, text)

    def matches_transfer(self, text: str) -> bool:
        return self._hit(self.transfer, text)


DEFAULT_PATTERNS = PatternSet()


@dataclass(frozen=True)
class ChainState:
    """Ordered commitments plus the responsibility graph they induce.

    ``last_index`` makes ingestion idempotent: a turn at an index the state
    has already consumed is skipped, so replaying a transcript is a no-op.
    ``last_speaker`` resolves who "you" is when a transfer phrase fires.
    """

    commitments: tuple[Commitment, ...] = ()
    graph: ResponsibilityGraph = ResponsibilityGraph()
    last_speaker: str | None = None
    last_index: int = -1

    def live(self) -> tuple[Commitment, ...]:
        return tuple(c for c in self.commitments if c.is_live)


def update_commitments(
    state: ChainState, turn: DialogueTurn, patterns: PatternSet = DEFAULT_PATTERNS
) -> ChainState:
    """Fold one turn into the chain state; returns a new state.

    A transfer phrase moves the speaker's most recent live commitment to the
    previous distinct speaker (or retains it reflexively when there is none)
    and appends the matching graph edge. Otherwise a commitment phrase adds
    one active commitment, de-duplicated by stripped text across the whole
    chain, at most one per turn.
    """
    if turn.index <= state.last_index:
        return state

    commitments = list(state.commitments)
    graph = state.graph

    if patterns.matches_transfer(turn.text):
        for pos in range(len(commitments) - 1, -1, -1):
            candidate = commitments[pos]
            if candidate.holder == turn.speaker and candidate.is_live:
                target = state.last_speaker
                if not target or target == turn.speaker:
                    target = turn.speaker
                commitments[pos] = candidate.transition(
                    CommitmentStatus.TRANSFERRED, turn.index, target=target
                )
                graph = graph.with_transfer(
                    ResponsibilityEdge(
                        source=turn.speaker,
                        target=target,
                        utterance_index=turn.index,
                        label=candidate.id,
                    ),
                    auto_register=True,
                )
                break
    elif patterns.matches_commitment(turn.text):
        key = turn.text.strip()
        if all(c.text != key for c in commitments):
            commitments.append(
                Commitment(
                    id=f"c{turn.index}",
                    holder=turn.speaker,
                    text=key,
                    status=CommitmentStatus.ACTIVE,
                    created_at=turn.index,
                    history=(StatusChange(status=CommitmentStatus.ACTIVE, turn_index=turn.index),),
                )
            )

    return ChainState(
        commitments=tuple(commitments),
        graph=graph,
        last_speaker=turn.speaker,
        last_index=turn.index,
    )


def replay(transcript: "Transcript", patterns: PatternSet = DEFAULT_PATTERNS) -> ChainState:
    state = ChainState()
    for turn in transcript.turns:
        state = update_commitments(state, turn, patterns)
    return state


def flag_silent_abandonment(
    state: ChainState, transcript: "Transcript", k: int = 5
) -> list[str]:
    """Ids of live commitments whose holder went quiet on them.

    A commitment is reported when its holder produced at least ``k`` later
    turns and none of them references it. Reference detection is lexical:
    sharing a normalized token of four or more characters with the commitment
    text. Reporting only; the state is never mutated.
    """
    flagged = []
    for commitment in state.commitments:
        if not commitment.is_live:
            continue
        anchor = content_tokens(commitment.text)
        later = [
            turn
            for turn in transcript.turns
            if turn.speaker == commitment.holder and turn.index > commitment.created_at
        ]
        if len(later) < k:
            continue
        if not any(anchor & content_tokens(turn.text) for turn in later):
            flagged.append(commitment.id)
    return flagged
