"""Evaluation rubric: sub-scores, metric totals, and role shift rate.

Three metrics, four sub-dimensions each. The first three sub-dimensions of a
metric score 0 to 2, the fourth scores 0 to 3, so each metric totals 0 to 9.
All sub-scores are integers; anything out of range raises RangeViolation at
construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import RangeViolation, TooFewTurns
from ..dialogue.transcript import PragmaticRole

SUB_MAXIMA = (2, 2, 2, 3)

METRIC_KEYS = ("pragmatic", "responsibility", "context")

METRIC_TITLES = {
    "pragmatic": "Pragmatic Consistency",
    "responsibility": "Responsibility Chain",
    "context": "Context Stability",
}

SUB_TITLES = {
    "pragmatic": ("Tone Consistency", "Functional Role Stability",
                  "Syntax and Rhythm Coherence", "Discursive Domain Clarity"),
    "responsibility": ("Attribution Clarity", "Responsibility Continuity",
                       "Legitimate Transfer", "Chain Closure"),
    "context": ("Thematic Stability", "Contextual Mirroring",
                "Repair Capability", "Presuppositional Alignment"),
}


def _check_four(name: str, values: Sequence[int]) -> tuple[int, int, int, int]:
    if len(values) != 4:
        raise RangeViolation(f"{name}: expected 4 sub-scores, got {len(values)}")
    for value, maximum in zip(values, SUB_MAXIMA):
        if not isinstance(value, int) or isinstance(value, bool):
            raise RangeViolation(f"{name}: sub-score {value!r} is not an integer")
        if not 0 <= value <= maximum:
            raise RangeViolation(f"{name}: sub-score {value} outside 0..{maximum}")
    return tuple(values)  # type: ignore[return-value]


@dataclass(frozen=True)
class SubScores:
    pragmatic: tuple[int, int, int, int]
    responsibility: tuple[int, int, int, int]
    context: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        for key in METRIC_KEYS:
            object.__setattr__(self, key, _check_four(key, getattr(self, key)))

    @classmethod
    def from_dict(cls, obj: Mapping[str, object]) -> "SubScores":
        missing = [key for key in METRIC_KEYS if key not in obj]
        if missing:
            raise RangeViolation(f"sub-score object missing {missing}")
        rows = {}
        for key in METRIC_KEYS:
            values = obj[key]
            if not isinstance(values, (list, tuple)):
                raise RangeViolation(f"{key}: expected an array of 4 sub-scores")
            rows[key] = tuple(values)
        return cls(**rows)

    def to_dict(self) -> dict[str, list[int]]:
        return {key: list(getattr(self, key)) for key in METRIC_KEYS}


def total_metric(sub: SubScores, metric: str) -> int:
    """Sum of one metric's four sub-scores (0 to 9)."""
    if metric not in METRIC_KEYS:
        raise RangeViolation(f"unknown metric {metric!r}, expected one of {METRIC_KEYS}")
    return sum(getattr(sub, metric))


def all_totals(sub: SubScores) -> tuple[int, int, int]:
    return tuple(total_metric(sub, key) for key in METRIC_KEYS)  # type: ignore[return-value]


def band(total: int) -> str:
    """Coarse reading of a metric total."""
    if total == 9:
        return "fully consistent"
    if total >= 6:
        return "mostly stable"
    return "fragmented"


def count_role_shifts(roles: Sequence[PragmaticRole]) -> int:
    return sum(1 for prev, curr in zip(roles, roles[1:]) if prev != curr)


def role_shift_rate(roles: Sequence[PragmaticRole]) -> float:
    """Share of consecutive role pairs that differ.

    Raises TooFewTurns below two roles, where no pair exists.
    """
    if len(roles) < 2:
        raise TooFewTurns(f"shift rate needs at least 2 roles, got {len(roles)}")
    return count_role_shifts(roles) / (len(roles) - 1)


def shift_rate_percent(roles: Sequence[PragmaticRole]) -> int:
    """Shift rate as a whole percent, truncated (one third renders as 33)."""
    if len(roles) < 2:
        raise TooFewTurns(f"shift rate needs at least 2 roles, got {len(roles)}")
    return count_role_shifts(roles) * 100 // (len(roles) - 1)
