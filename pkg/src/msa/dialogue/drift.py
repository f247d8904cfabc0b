"""Context drift detection and realignment.

The overlap ratio divides the number of distinct shared tokens by the total
token count of the current utterance. An utterance drifts exactly when that
ratio falls strictly below the threshold, so a ratio equal to the threshold
does not drift. The realignment directive is computed from the current turn
alone; no history re-scan is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyUtterance
from ..text import tokenize

DEFAULT_DRIFT_THRESHOLD = 0.2


@dataclass(frozen=True)
class DriftReport:
    turn_index: int
    overlap_ratio: float
    drifted: bool
    realignment: str | None = None


def generate_realignment(last_user_text: str) -> str:
    """Directive suffix asking the counterpart to re-anchor before replying."""
    return f"(please confirm first: '{last_user_text}')"


def detect_drift(
    prev_text: str,
    curr_text: str,
    threshold: float = DEFAULT_DRIFT_THRESHOLD,
    *,
    turn_index: int = 0,
    raw_tokens: bool = False,
) -> DriftReport:
    """Compare the current utterance against the previous one.

    ``raw_tokens`` switches to plain whitespace splitting for bit-identical
    legacy arithmetic; the default normalizes case and ASCII punctuation
    first. Raises EmptyUtterance when the current utterance has no tokens.
    """
    prev_tokens = tokenize(prev_text, raw=raw_tokens)
    curr_tokens = tokenize(curr_text, raw=raw_tokens)
    if not curr_tokens:
        raise EmptyUtterance(f"no tokens in current utterance {curr_text!r}")
    overlap = len(set(prev_tokens) & set(curr_tokens))
    ratio = overlap / len(curr_tokens)
    drifted = ratio < threshold
    return DriftReport(
        turn_index=turn_index,
        overlap_ratio=ratio,
        drifted=drifted,
        realignment=generate_realignment(curr_text) if drifted else None,
    )
