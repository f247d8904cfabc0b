"""Score cards, their canonical JSON form, and plain-text tables.

The canonical serializer is the single source for both the CLI and the HTTP
surface, so the two emit byte-identical documents for the same input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, TYPE_CHECKING

from ..dialogue.transcript import PragmaticRole
from .heuristics import AnnotatedSubScores, HeuristicScores, auto_annotate, heuristic_score
from .rubric import (
    METRIC_KEYS,
    METRIC_TITLES,
    SUB_TITLES,
    SubScores,
    all_totals,
    band,
    count_role_shifts,
    role_shift_rate,
    shift_rate_percent,
)

if TYPE_CHECKING:
    from ..dialogue.transcript import Transcript


@dataclass(frozen=True)
class ScoreCard:
    totals: tuple[int, int, int] | None = None
    subscores: SubScores | None = None
    confidence: dict[str, float] | None = None
    shift_rate: float | None = None
    shift_rate_pct: int | None = None
    heuristic: HeuristicScores | None = None
    advisory: bool = False

    @classmethod
    def from_subscores(
        cls, sub: SubScores, roles: Sequence[PragmaticRole] | None = None
    ) -> "ScoreCard":
        shift = shift_pct = None
        if roles is not None and len(roles) >= 2:
            shift = role_shift_rate(roles)
            shift_pct = shift_rate_percent(roles)
        return cls(
            totals=all_totals(sub),
            subscores=sub,
            shift_rate=shift,
            shift_rate_pct=shift_pct,
        )

    def to_dict(self) -> dict[str, object]:
        out: dict[str, object] = {}
        if self.totals is not None:
            out["totals"] = {
                "pragmatic_consistency": self.totals[0],
                "responsibility_chain": self.totals[1],
                "context_stability": self.totals[2],
            }
        if self.subscores is not None:
            out["subscores"] = self.subscores.to_dict()
        if self.confidence is not None:
            out["confidence"] = self.confidence
        out["shift_rate"] = self.shift_rate
        out["shift_rate_percent"] = self.shift_rate_pct
        if self.heuristic is not None:
            out["heuristic"] = self.heuristic.to_dict()
        out["advisory"] = self.advisory
        return out


def scorecard_json(card: ScoreCard) -> str:
    """Canonical JSON document, trailing newline included."""
    return json.dumps(card.to_dict(), indent=2, ensure_ascii=False) + "\n"


def annotate_transcript(transcript: "Transcript") -> ScoreCard:
    """Mechanical annotation of a transcript.

    Combines the advisory sub-score estimate, the coarse heuristic triple,
    and, when the turns carry pragmatic roles, the role shift rate.
    """
    annotated: AnnotatedSubScores = auto_annotate(transcript)
    heur = heuristic_score(transcript)
    roles = [t.function_role for t in transcript.turns if t.function_role is not None]
    shift = shift_pct = None
    if len(roles) >= 2:
        shift = role_shift_rate(roles)
        shift_pct = shift_rate_percent(roles)
    return ScoreCard(
        totals=all_totals(annotated.subscores),
        subscores=annotated.subscores,
        confidence=annotated.confidence,
        shift_rate=shift,
        shift_rate_pct=shift_pct,
        heuristic=heur,
        advisory=True,
    )


def render_case_table(
    sub: SubScores,
    shift_pct: int | None = None,
    title: str | None = None,
) -> str:
    """Readable evaluation breakdown, one block per metric."""
    lines = []
    if title:
        lines.append(title)
        lines.append("=" * len(title))
    prefixes = {"pragmatic": "P", "responsibility": "R", "context": "C"}
    totals = all_totals(sub)
    for metric, total in zip(METRIC_KEYS, totals):
        lines.append(f"{METRIC_TITLES[metric]:<34}{total}/9  ({band(total)})")
        values = getattr(sub, metric)
        for i, (label, value) in enumerate(zip(SUB_TITLES[metric], values), start=1):
            lines.append(f"  {prefixes[metric]}{i} {label:<29}{value}")
    if shift_pct is not None:
        lines.append(f"{'Speaker Role Shift Rate':<34}{shift_pct}%")
    return "\n".join(lines) + "\n"
