"""Context constraint rules over transcripts.

Each rule applies one predicate from a closed set to every utterance, paired
with its context window. Evaluation is exhaustive and non-short-circuiting:
checking n utterances against m rules performs exactly n*m predicate
evaluations, and findings come back ordered by (utterance index, rule
position).

Predicate semantics (a finding marks an utterance that violates the rule):
    keyword-presence      text must contain ``arg`` (case-insensitive)
    keyword-absence       text must not contain ``arg``
    max-new-token-ratio   share of tokens unseen in the window must be <= arg;
                          the opening utterance is exempt
    topic-anchor-presence ``arg`` must appear in the utterance or within the
                          previous ``window`` turns
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TYPE_CHECKING

from ..errors import MalformedJson
from ..text import tokenize

if TYPE_CHECKING:
    from ..dialogue.transcript import Transcript

PREDICATES = (
    "keyword-presence",
    "keyword-absence",
    "max-new-token-ratio",
    "topic-anchor-presence",
)
SEVERITIES = ("warn", "violation")
DEFAULT_WINDOW = 4


@dataclass(frozen=True)
class ContextRule:
    rule_id: str
    predicate: str
    arg: str | float
    severity: str = "violation"
    window: int = DEFAULT_WINDOW

    def __post_init__(self) -> None:
        if not self.rule_id:
            raise MalformedJson("rule_id must be non-empty")
        if self.predicate not in PREDICATES:
            raise MalformedJson(f"unknown predicate {self.predicate!r}")
        if self.severity not in SEVERITIES:
            raise MalformedJson(f"severity must be one of {SEVERITIES}, got {self.severity!r}")
        if self.predicate == "max-new-token-ratio":
            if not isinstance(self.arg, (int, float)) or isinstance(self.arg, bool):
                raise MalformedJson("max-new-token-ratio needs a numeric arg")
        elif not isinstance(self.arg, str) or not self.arg:
            raise MalformedJson(f"{self.predicate} needs a non-empty string arg")
        if self.window < 1:
            raise MalformedJson("window must be at least 1")


@dataclass(frozen=True)
class RuleFinding:
    rule_id: str
    utterance_index: int
    severity: str


@dataclass
class OpCounter:
    """Counts predicate evaluations for the exact-work contract."""

    count: int = 0

    def bump(self) -> None:
        self.count += 1


def _window_texts(transcript: "Transcript", i: int, window: int) -> list[str]:
    lo = max(0, i - window)
    return [turn.text for turn in transcript.turns[lo:i]]


def _holds(rule: ContextRule, transcript: "Transcript", i: int) -> bool:
    text = transcript.turns[i].text
    if rule.predicate == "keyword-presence":
        return str(rule.arg).lower() in text.lower()
    if rule.predicate == "keyword-absence":
        return str(rule.arg).lower() not in text.lower()
    if rule.predicate == "max-new-token-ratio":
        if i == 0:
            return True
        tokens = set(tokenize(text))
        if not tokens:
            return True
        prior: set[str] = set()
        for prev in _window_texts(transcript, i, rule.window):
            prior.update(tokenize(prev))
        new_ratio = len(tokens - prior) / len(tokens)
        return new_ratio <= float(rule.arg)
    # topic-anchor-presence
    needle = str(rule.arg).lower()
    if needle in text.lower():
        return True
    return any(needle in prev.lower() for prev in _window_texts(transcript, i, rule.window))


def check_context_constraints(
    transcript: "Transcript",
    rules: Sequence[ContextRule],
    counter: OpCounter | None = None,
) -> list[RuleFinding]:
    """Evaluate every rule against every utterance, exactly once each.

    Pass an OpCounter to observe the n*m evaluation count.
    """
    findings: list[RuleFinding] = []
    for i in range(len(transcript.turns)):
        for rule in rules:
            if counter is not None:
                counter.bump()
            if not _holds(rule, transcript, i):
                findings.append(
                    RuleFinding(rule_id=rule.rule_id, utterance_index=i, severity=rule.severity)
                )
    return findings


def load_context_rules(path: str | Path) -> list[ContextRule]:
    """Read an ordered rules file (JSON array of rule objects)."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise MalformedJson(str(exc)) from exc
    if not isinstance(raw, list):
        raise MalformedJson("rules file must hold a JSON array")
    rules = []
    for row in raw:
        if not isinstance(row, dict):
            raise MalformedJson(f"rule must be an object, got {type(row).__name__}")
        rules.append(
            ContextRule(
                rule_id=str(row.get("rule_id", "")),
                predicate=str(row.get("predicate", "")),
                arg=row.get("arg", ""),
                severity=str(row.get("severity", "violation")),
                window=int(row.get("window", DEFAULT_WINDOW)),
            )
        )
    return rules
