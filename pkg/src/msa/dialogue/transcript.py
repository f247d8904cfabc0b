"""Dialogue turns and transcripts, with JSONL persistence.

A turn carries two distinct notions of role. ``turn_role`` is the
conversational slot (user, assistant, system) that alternates turn by turn.
``function_role`` is the pragmatic stance of the utterance and changes only
for discourse reasons. They are never conflated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from ..errors import InvalidRequest, MalformedJson

TURN_ROLES = ("user", "assistant", "system")


class PragmaticRole(Enum):
    INFORMATION_PROVIDER = "information_provider"
    CONTEXT_CONFIRMER = "context_confirmer"
    RESPONSIBILITY_ACCEPTOR = "responsibility_acceptor"
    RESPONSIBILITY_DELEGATOR = "responsibility_delegator"
    CLARIFIER = "clarifier"
    CONCEPTUAL_BUILDER = "conceptual_builder"
    CHALLENGER = "challenger"
    EVADER = "evader"


@dataclass(frozen=True)
class DialogueTurn:
    speaker: str
    text: str
    turn_role: str
    function_role: PragmaticRole | None = None
    index: int = 0

    def __post_init__(self) -> None:
        if not self.speaker:
            raise InvalidRequest("turn speaker must be non-empty")
        if not self.text:
            raise InvalidRequest("turn text must be non-empty")
        if self.turn_role not in TURN_ROLES:
            raise InvalidRequest(f"turn_role must be one of {TURN_ROLES}, got {self.turn_role!r}")
        if self.index < 0:
            raise InvalidRequest(f"turn index must be >= 0, got {self.index}")

    def to_dict(self) -> dict[str, object]:
        out: dict[str, object] = {
            "speaker": self.speaker,
            "text": self.text,
            "turn_role": self.turn_role,
        }
        if self.function_role is not None:
            out["function_role"] = self.function_role.value
        out["index"] = self.index
        return out

    @classmethod
    def from_dict(cls, obj: Mapping[str, object]) -> "DialogueTurn":
        if not isinstance(obj, Mapping):
            raise InvalidRequest(f"turn must be an object, got {type(obj).__name__}")
        role_raw = obj.get("function_role")
        function_role = None
        if role_raw is not None:
            try:
                function_role = PragmaticRole(str(role_raw))
            except ValueError:
                raise InvalidRequest(f"unknown function_role {role_raw!r}") from None
        index = obj.get("index", 0)
        if not isinstance(index, int):
            raise InvalidRequest(f"turn index must be an integer, got {index!r}")
        return cls(
            speaker=str(obj.get("speaker", "")),
            text=str(obj.get("text", "")),
            turn_role=str(obj.get("turn_role", "")),
            function_role=function_role,
            index=index,
        )


@dataclass(frozen=True)
class Transcript:
    turns: tuple[DialogueTurn, ...] = ()
    metadata: Mapping[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        for prev, curr in zip(self.turns, self.turns[1:]):
            if curr.index != prev.index + 1:
                raise InvalidRequest(
                    f"turn indices must be consecutive: {prev.index} then {curr.index}"
                )

    def __len__(self) -> int:
        return len(self.turns)

    @property
    def last(self) -> DialogueTurn | None:
        return self.turns[-1] if self.turns else None

    @property
    def next_index(self) -> int:
        return self.turns[-1].index + 1 if self.turns else 0

    def with_turn(self, turn: DialogueTurn) -> "Transcript":
        return Transcript(turns=self.turns + (turn,), metadata=self.metadata)

    @classmethod
    def from_dicts(
        cls, rows: Iterable[Mapping[str, object]], metadata: Mapping[str, str] | None = None
    ) -> "Transcript":
        return cls(
            turns=tuple(DialogueTurn.from_dict(row) for row in rows),
            metadata=dict(metadata or {}),
        )

    @classmethod
    def from_texts(cls, rows: Sequence[tuple[str, str, str]]) -> "Transcript":
        """Convenience builder from (speaker, text, turn_role) triples."""
        return cls(
            turns=tuple(
                DialogueTurn(speaker=s, text=t, turn_role=r, index=i)
                for i, (s, t, r) in enumerate(rows)
            )
        )


def load_transcript_jsonl(path: str | Path) -> Transcript:
    rows = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                rows.append(json.loads(line))
            except ValueError as exc:
                raise MalformedJson(f"{path}:{lineno}: {exc}") from exc
    return Transcript.from_dicts(rows, metadata={"source": str(path)})


def dump_transcript_jsonl(transcript: Transcript, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for turn in transcript.turns:
            handle.write(json.dumps(turn.to_dict(), ensure_ascii=False) + "\n")
