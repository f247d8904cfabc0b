"""Mechanical scoring: the coarse heuristic triple and advisory annotation.

heuristic_score reproduces the reference arithmetic exactly: speaker
alternation gives role continuity 9 or 5, the count of turns containing a
commitment phrase maps through >=3 / ==2 / else to 9 / 7 / 5, and context
integrity is max(1, 9 - 2 * short_turns) where a short turn has fewer than
three whitespace tokens.

auto_annotate is a best-effort lexical realization of the rubric guidelines.
It produces sub-scores with per-dimension confidence and is advisory only. It
does not claim to replicate human annotation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from ..errors import EmptyContext
from ..text import content_tokens
from ..dialogue.roles import DEFAULT_ROLE_POLICY
from .rubric import SubScores

if TYPE_CHECKING:
    from ..dialogue.transcript import Transcript

HEURISTIC_COMMIT_PATTERNS = ("I will", "should", "will")


@dataclass(frozen=True)
class HeuristicScores:
    role_continuity: int
    responsibility_trace: int
    context_integrity: int

    def to_dict(self) -> dict[str, int]:
        return {
            "role_continuity": self.role_continuity,
            "responsibility_trace": self.responsibility_trace,
            "context_integrity": self.context_integrity,
        }


def heuristic_score(dialog: "Transcript") -> HeuristicScores:
    """Coarse 0-9 triple from surface features alone."""
    turns = dialog.turns
    if not turns:
        raise EmptyContext("heuristic scoring needs at least one turn")

    alternating = all(
        turns[i].speaker != turns[i + 1].speaker for i in range(len(turns) - 1)
    )
    commits = sum(
        1 for turn in turns if any(pat in turn.text for pat in HEURISTIC_COMMIT_PATTERNS)
    )
    drifts = sum(1 for turn in turns if len(turn.text.split()) < 3)

    return HeuristicScores(
        role_continuity=9 if alternating else 5,
        responsibility_trace=9 if commits >= 3 else 7 if commits == 2 else 5,
        context_integrity=max(1, 9 - 2 * drifts),
    )


# --- advisory annotation ---

CASUAL_MARKERS = ("lol", "haha", "lmao", "dunno", "meme", "idk", "!!")
BLUR_MARKERS = ("lol", "i guess", "kinda", "sort of", "dunno", "or something", "idk")
ATTRIBUTION_MARKERS = ("you should", "you must", "no one is willing")
CONTINUITY_MARKERS = ("as you said", "you promised", "i still", "as we discussed", "as i said")
TRANSFER_MARKERS = ("i'll leave that to", "i leave that to", "over to you", "your turn")
EVASIVE_MARKERS = ("whatever", "not my problem", "who cares", "let's talk about", "anyway")
MIRROR_MARKERS = ("i see your point", "i follow", "let me add", "you're right", "i agree",
                  "as you say", "good point")
REPAIR_MARKERS = ("we're off", "off topic", "off-topic", "not quite what i",
                  "let me rephrase", "to clarify", "wait,")


@dataclass(frozen=True)
class RubricRuleSet:
    """Marker lists driving the advisory annotator."""

    casual: tuple[str, ...] = CASUAL_MARKERS
    blur: tuple[str, ...] = BLUR_MARKERS
    attribution: tuple[str, ...] = ATTRIBUTION_MARKERS
    continuity: tuple[str, ...] = CONTINUITY_MARKERS
    transfer: tuple[str, ...] = TRANSFER_MARKERS
    evasive: tuple[str, ...] = EVASIVE_MARKERS
    mirror: tuple[str, ...] = MIRROR_MARKERS
    repair: tuple[str, ...] = REPAIR_MARKERS


DEFAULT_RUBRIC_RULES = RubricRuleSet()

# Fixed confidence per sub-dimension. These are crude lexical proxies and the
# numbers say so.
CONFIDENCE = {
    "P1": 0.4, "P2": 0.3, "P3": 0.5, "P4": 0.5,
    "R1": 0.6, "R2": 0.3, "R3": 0.3, "R4": 0.3,
    "C1": 0.6, "C2": 0.4, "C3": 0.3, "C4": 0.3,
}


@dataclass(frozen=True)
class AnnotatedSubScores:
    subscores: SubScores
    confidence: dict[str, float] = field(default_factory=dict)


def _has_any(text: str, markers: tuple[str, ...]) -> bool:
    lowered = text.lower()
    return any(marker in lowered for marker in markers)


def _first_person(text: str) -> bool:
    return "I" in text.split() or text.startswith("I ") or " I'" in text or text.startswith("I'")


def auto_annotate(
    transcript: "Transcript", rules: RubricRuleSet = DEFAULT_RUBRIC_RULES
) -> AnnotatedSubScores:
    """Lexical sub-score estimate with per-dimension confidence.

    Advisory only. See the docstrings below each block for what each
    sub-dimension actually measures here.
    """
    turns = transcript.turns
    if not turns:
        raise EmptyContext("annotation needs at least one turn")
    n = len(turns)
    pairs = list(zip(turns, turns[1:]))

    # P1: style flips between casual and sober adjacent turns
    styles = [_has_any(t.text, rules.casual) for t in turns]
    flips = sum(1 for a, b in zip(styles, styles[1:]) if a != b)
    p1 = 2 if flips == 0 else 1 if flips == 1 else 0

    # P2: stability of policy-inferred pragmatic roles
    inferred = [DEFAULT_ROLE_POLICY.classify(t.text) for t in turns]
    if n == 1:
        p2 = 2
    else:
        shift_frac = sum(1 for a, b in zip(inferred, inferred[1:]) if a != b) / (n - 1)
        p2 = 2 if shift_frac <= 1 / 3 else 1 if shift_frac <= 2 / 3 else 0

    # P3: fragment share; a fragment is under three raw tokens or lacks
    # terminal punctuation
    fragments = sum(
        1
        for t in turns
        if len(t.text.split()) < 3 or t.text.rstrip()[-1:] not in (".", "?", "!", "…")
    )
    frag_ratio = fragments / n
    p3 = 2 if fragments == 0 else 1 if frag_ratio <= 0.25 else 0

    # P4: register-blurring markers
    blur_turns = sum(1 for t in turns if _has_any(t.text, rules.blur))
    p4 = 3 if blur_turns == 0 else 2 if blur_turns == 1 else 1 if blur_turns == 2 else 0

    # R1: first or second person attribution
    attributing = sum(
        1 for t in turns if _first_person(t.text) or _has_any(t.text, rules.attribution)
    )
    r1 = 2 if attributing >= 3 else 1 if attributing >= 1 else 0

    # R2: explicit continuity markers, or reuse of one's own earlier content
    marker_r2 = sum(1 for t in turns if _has_any(t.text, rules.continuity))
    marker_score = 2 if marker_r2 >= 2 else 1 if marker_r2 == 1 else 0
    reuse_hits = 0
    reuse_total = 0
    seen_by_speaker: dict[str, set[str]] = {}
    for t in turns:
        tokens = content_tokens(t.text)
        if t.speaker in seen_by_speaker:
            reuse_total += 1
            if tokens & seen_by_speaker[t.speaker]:
                reuse_hits += 1
            seen_by_speaker[t.speaker] |= tokens
        else:
            seen_by_speaker[t.speaker] = set(tokens)
    reuse_frac = reuse_hits / reuse_total if reuse_total else 0.0
    reuse_score = 2 if reuse_frac >= 0.6 else 1 if reuse_frac >= 0.3 else 0
    r2 = max(marker_score, reuse_score)

    # R3: explicit handoff phrasing beats silence; repeated evasion scores zero
    evasive_turns = sum(1 for t in turns if _has_any(t.text, rules.evasive))
    if any(_has_any(t.text, rules.transfer) for t in turns):
        r3 = 2
    elif evasive_turns >= 2:
        r3 = 0
    else:
        r3 = 1

    # R4: how the dialogue ends
    final = turns[-1]
    final_tokens = len(final.text.split())
    if final_tokens < 3:
        r4 = 0
    elif _has_any(final.text, rules.evasive) or _has_any(final.text, rules.blur):
        r4 = 1
    elif "?" in final.text:
        r4 = 1
    elif _first_person(final.text):
        r4 = 3
    else:
        r4 = 2

    # C1: adjacent-turn content overlap
    if not pairs:
        c1 = 2
        overlap_frac = 1.0
    else:
        overlapping = sum(
            1 for a, b in pairs if content_tokens(a.text) & content_tokens(b.text)
        )
        overlap_frac = overlapping / len(pairs)
        c1 = 2 if overlap_frac >= 0.6 else 1 if overlap_frac >= 0.3 else 0

    # C2: mirroring markers or echo of the other side's previous turn
    marker_c2 = sum(1 for t in turns if _has_any(t.text, rules.mirror))
    marker_score = 2 if marker_c2 >= 2 else 1 if marker_c2 == 1 else 0
    echo_hits = sum(
        1
        for a, b in pairs
        if a.speaker != b.speaker and content_tokens(a.text) & content_tokens(b.text)
    )
    echo_frac = echo_hits / len(pairs) if pairs else 0.0
    echo_score = 2 if echo_frac >= 0.5 else 1 if echo_frac >= 0.25 else 0
    c2 = max(marker_score, echo_score)

    # C3: repair when drifting, quiet stability otherwise
    if any(_has_any(t.text, rules.repair) for t in turns):
        c3 = 2
    elif overlap_frac >= 0.3:
        c3 = 1
    else:
        c3 = 0

    # C4: shared content vocabulary across speakers
    vocab_by_speaker: dict[str, set[str]] = {}
    for t in turns:
        vocab_by_speaker.setdefault(t.speaker, set()).update(content_tokens(t.text))
    if len(vocab_by_speaker) < 2:
        c4 = 0
    else:
        vocabularies = list(vocab_by_speaker.values())
        shared = set.intersection(*vocabularies)
        union = set.union(*vocabularies)
        jaccard = len(shared) / len(union) if union else 0.0
        c4 = 3 if jaccard >= 0.12 else 2 if jaccard >= 0.06 else 1 if jaccard >= 0.02 else 0

    sub = SubScores(
        pragmatic=(p1, p2, p3, p4),
        responsibility=(r1, r2, r3, r4),
        context=(c1, c2, c3, c4),
    )
    return AnnotatedSubScores(subscores=sub, confidence=dict(CONFIDENCE))
