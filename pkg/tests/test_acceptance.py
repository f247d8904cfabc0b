"""Acceptance gate.

One test per criterion; each prints a single PASS or FAIL line (visible with
``pytest tests/test_acceptance.py -v -s``) and then asserts. Tolerances and
time bounds are stated inline next to each check.
"""

from __future__ import annotations

import math
import random
import time

from scipy import stats as scipy_stats

from msa.dialogue.drift import detect_drift
from msa.dialogue.llm import StubLlmClient
from msa.dialogue.transcript import PragmaticRole
from msa.fixtures import FIXTURE_CASES, load_fixture
from msa.gcode.registry import load_registry
from msa.gcode.tags import GCodeTag, parse_config_document, parse_tag
from msa.msl.cycles import detect_closed_loops
from msa.msl.graph import (
    GraphBuilder,
    ResponsibilityEdge,
    detect_partial_drift,
)
from msa.msl.rules import ContextRule, OpCounter, check_context_constraints
from msa.scoring.heuristics import heuristic_score
from msa.scoring.rubric import all_totals, shift_rate_percent
from msa.scoring.stats import GroupStats, mean_confidence_interval, two_sample_t
from msa.simulate import MultiSpeakerTask, run_simulation_to_file
from helpers import (
    brute_force_drift,
    brute_force_loops,
    make_graph,
    make_transcript,
    post_json,
    running_server,
)


def _verdict(criterion: int, ok: bool, detail: str = "") -> None:
    tail = f" ({detail})" if detail else ""
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}{tail}")
    assert ok, f"criterion {criterion} failed{tail}"


PUBLISHED = {
    "case1": ((9, 8, 8), 0),
    "case2": ((8, 7, 9), 50),
    "case3": ((8, 6, 8), 33),
    "case4": ((4, 3, 2), 75),
}


def test_criterion_1_rubric_reproduction():
    started = time.perf_counter()
    ok = True
    for case_id in FIXTURE_CASES:
        fixture = load_fixture(case_id)
        want_totals, want_shift = PUBLISHED[case_id]
        totals = all_totals(fixture.subscores)
        shift = shift_rate_percent(fixture.function_roles)
        if totals != want_totals or shift != want_shift:
            ok = False
    elapsed = time.perf_counter() - started
    _verdict(1, ok and elapsed < 1.0, f"4 cases exact, {elapsed:.3f}s < 1s")


def test_criterion_2_shift_rate_worked_examples():
    declarant = [PragmaticRole.INFORMATION_PROVIDER] * 5
    shifting = [
        PragmaticRole.INFORMATION_PROVIDER,
        PragmaticRole.CHALLENGER,
        PragmaticRole.EVADER,
        PragmaticRole.EVADER,
        PragmaticRole.CLARIFIER,
    ]
    ok = shift_rate_percent(declarant) == 0 and shift_rate_percent(shifting) == 75
    _verdict(2, ok, "0/(5-1)=0% and 3/(5-1)=75% exact")


def test_criterion_3_msl_oracle_equivalence():
    rng = random.Random(420)
    pool = ["a", "b", "c", "d", "e", "f", "g", "h"]
    started = time.perf_counter()
    mismatches = 0
    total = 1000
    for _ in range(total):
        nodes = pool[: rng.randint(1, 8)]
        pairs = [
            (rng.choice(nodes), rng.choice(nodes))
            for _ in range(rng.randint(0, 16))
        ]
        graph = make_graph(nodes, pairs)
        if detect_closed_loops(graph) != frozenset(brute_force_loops(graph)):
            mismatches += 1
        if detect_partial_drift(graph) != frozenset(brute_force_drift(graph)):
            mismatches += 1
    elapsed = time.perf_counter() - started
    _verdict(
        3,
        mismatches == 0 and elapsed < 30.0,
        f"{total} graphs, {mismatches} mismatches, {elapsed:.1f}s < 30s",
    )


def test_criterion_4_complexity_contracts():
    def builder_ops(n: int) -> int:
        builder = GraphBuilder()
        for i in range(n):
            builder.add_transfer(
                ResponsibilityEdge(source=f"s{i % 97}", target=f"s{(i + 1) % 97}", utterance_index=i)
            )
        return builder.ops

    sizes = (1_000, 10_000, 100_000)
    per_item = [builder_ops(n) / n for n in sizes]
    linear = max(per_item) <= 1.2 * min(per_item)

    transcript = make_transcript([("s", f"turn number {i}", "user") for i in range(23)])
    rules = [
        ContextRule("k1", predicate="keyword-presence", arg="turn"),
        ContextRule("k2", predicate="keyword-absence", arg="zzz"),
        ContextRule("k3", predicate="max-new-token-ratio", arg=0.9),
        ContextRule("k4", predicate="topic-anchor-presence", arg="number"),
    ]
    counter = OpCounter()
    check_context_constraints(transcript, rules, counter=counter)
    exact = counter.count == 23 * 4

    _verdict(
        4,
        linear and exact,
        f"ops/n spread {max(per_item) / min(per_item):.3f} <= 1.2; "
        f"{counter.count} == 23*4 evaluations",
    )


def test_criterion_5_statistics():
    group_a = GroupStats(n=1102, mean=7.8, std_dev=0.57)
    group_b = GroupStats(n=373, mean=6.4, std_dev=0.24)
    t, df = two_sample_t(group_a, group_b)
    ref_t, _ = scipy_stats.ttest_ind_from_stats(
        group_a.mean, group_a.std_dev, group_a.n,
        group_b.mean, group_b.std_dev, group_b.n,
        equal_var=True,
    )
    oracle_ok = math.isclose(t, float(ref_t), rel_tol=0, abs_tol=1e-9) and df == 1473

    printed_reference = 44.64  # previously reported value; matching it is NOT required
    delta = t - printed_reference

    lo, hi = mean_confidence_interval(group_b, 0.95)
    ci_ok = abs(lo - 6.38) <= 0.01 and abs(hi - 6.43) <= 0.01

    _verdict(
        5,
        oracle_ok and ci_ok,
        f"t={t:.4f} vs library oracle |d|<=1e-9, df={df}; "
        f"reference {printed_reference} delta {delta:+.4f} (flagged, match not required); "
        f"control CI [{lo:.4f}, {hi:.4f}] within +/-0.01 of [6.38, 6.43]",
    )


def test_criterion_6_reference_heuristic_mappings():
    alternating = make_transcript(
        [
            ("a", "I will open the retro doc now", "user"),
            ("b", "we should collect the action items", "assistant"),
            ("a", "the team will review them tomorrow", "user"),
        ]
    )
    same_speaker = make_transcript(
        [
            ("a", "I will open the retro doc now", "user"),
            ("a", "then I continue with the notes", "user"),
        ]
    )
    two_commits = make_transcript(
        [
            ("a", "I will open the retro doc now", "user"),
            ("b", "we should collect the action items", "assistant"),
            ("a", "the notes look complete to me", "user"),
        ]
    )
    shorty = make_transcript(
        [
            ("a", "ok", "user"),
            ("b", "fine", "assistant"),
            ("a", "sure thing, noted in full", "user"),
            ("b", "yep", "assistant"),
            ("a", "hm", "user"),
            ("b", "right", "assistant"),
        ]
    )
    s1 = heuristic_score(alternating)
    s2 = heuristic_score(same_speaker)
    s3 = heuristic_score(two_commits)
    s4 = heuristic_score(shorty)
    ok = (
        s1.role_continuity == 9
        and s2.role_continuity == 5
        and s1.responsibility_trace == 9   # 3 commitment turns
        and s3.responsibility_trace == 7   # 2 commitment turns
        and s2.responsibility_trace == 5   # fewer than 2
        and s1.context_integrity == 9      # no short turns
        and s3.context_integrity == 9
        and s4.context_integrity == 1      # floor: max(1, 9 - 2*5)
    )
    _verdict(6, ok, "9/5 continuity, 9/7/5 commitments, max(1, 9-2*drifts) floor")


def test_criterion_7_drift_boundaries():
    boundary = detect_drift("anchor alpha beta", "anchor w x y z", turn_index=1)
    identical = detect_drift("same exact words", "same exact words", turn_index=1)
    ok = (
        boundary.overlap_ratio == 0.2
        and not boundary.drifted
        and identical.overlap_ratio == 1.0
        and not identical.drifted
    )
    _verdict(7, ok, "ratio 0.2 strict boundary not drifted; identity 1.0 clean")


def test_criterion_8_dsl_round_trip_and_service():
    registry = load_registry()
    surfaces = sorted(GCodeTag(dim, value).surface for dim, value in registry.all_tags())
    round_trip_ok = all(parse_tag(parse_tag(s).surface).surface == s for s in surfaces)
    count_ok = len(surfaces) >= 17  # every registered tag; registry carries 19

    import json

    listed = parse_config_document(
        json.dumps(
            {
                "speaker_module": [
                    "#T_SOFTASSERT", "#P_SELFREF", "#C_LOOP",
                    "#CTX_MERGE", "#L_CASCADE", "#E_TIGHT",
                ]
            }
        )
    )
    keyed = parse_config_document(
        json.dumps(
            {
                "speaker_module": {
                    "tone": "SOFTASSERT",
                    "position": "SELFREF",
                    "closure": "LOOP",
                    "context_alignment": "MERGE",
                    "logical_flow": "CASCADE",
                    "affective_tension": "TIGHT",
                }
            }
        )
    )
    forms_ok = listed == keyed

    prompt = (
        "Please analyze the impact of 'emotional restraint' "
        "in American cultural social interactions."
    )
    body = {
        "prompt": prompt,
        "speaker_module": [
            "#T_SOFTASSERT", "#P_SELFREF", "#C_LOOP",
            "#CTX_MERGE", "#L_CASCADE", "#E_TIGHT",
        ],
    }
    directives = (
        "[TONE=SOFTASSERT] [POSITION=SELFREF] [CLOSURE=LOOP] "
        "[CONTEXT_ALIGNMENT=MERGE] [LOGICAL_FLOW=CASCADE] [AFFECTIVE_TENSION=TIGHT]"
    )
    with running_server(StubLlmClient()) as port:
        status, reply = post_json(port, "/generate_with_speaker_module", body)
    service_ok = status == 200 and reply == {
        "output": f"<ECHO directives='{directives}' last='{prompt}'>"
    }

    _verdict(
        8,
        round_trip_ok and count_ok and forms_ok and service_ok,
        f"{len(surfaces)} tags round-trip; config forms equal; service 200 with echo",
    )


def test_criterion_9_pipeline_determinism(tmp_path):
    task = MultiSpeakerTask.from_obj(
        {
            "speaker_A": {"tone": "NEUTRAL", "position": "DETACH"},
            "speaker_B": {"tone": "HIGHASSERT", "closure": "CUT"},
            "task": "Debate whether the deploy freeze should lift on Monday.",
        }
    )
    blobs = []
    for i in range(3):
        path = run_simulation_to_file(
            task, StubLlmClient(), out_dir=tmp_path / f"run{i}",
            task_id="freeze-debate", turns=6, seed=0,
        )
        blobs.append(path.read_bytes())
    ok = blobs[0] == blobs[1] == blobs[2]
    _verdict(9, ok, "3 runs byte-identical with stub client and fixed seed")
