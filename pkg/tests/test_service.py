"""HTTP surface: endpoints, status codes, structured errors, CLI parity."""

from __future__ import annotations

import json
import subprocess
import sys
import urllib.error
import urllib.request

import pytest

from msa.dialogue.llm import StubLlmClient
from msa.errors import LlmTimeout, LlmUnavailable
from helpers import get_json, post_json, running_server

SAMPLE_BODY = {
    "prompt": (
        "Please analyze the impact of 'emotional restraint' "
        "in American cultural social interactions."
    ),
    "speaker_module": [
        "#T_SOFTASSERT",
        "#P_SELFREF",
        "#C_LOOP",
        "#CTX_MERGE",
        "#L_CASCADE",
        "#E_TIGHT",
    ],
}

FULL_DIRECTIVES = (
    "[TONE=SOFTASSERT] [POSITION=SELFREF] [CLOSURE=LOOP] "
    "[CONTEXT_ALIGNMENT=MERGE] [LOGICAL_FLOW=CASCADE] [AFFECTIVE_TENSION=TIGHT]"
)


def test_health():
    with running_server() as port:
        status, body = get_json(port, "/health")
    assert (status, body) == (200, {"status": "ok"})


def test_generate_with_tag_list_body():
    with running_server() as port:
        status, body = post_json(port, "/generate_with_speaker_module", SAMPLE_BODY)
    assert status == 200
    assert body == {
        "output": f"<ECHO directives='{FULL_DIRECTIVES}' last='{SAMPLE_BODY['prompt']}'>"
    }


def test_generate_with_keyed_body():
    keyed = {
        "prompt": "Same prompt, other form.",
        "speaker_module": {
            "tone": "SOFTASSERT",
            "position": "SELFREF",
            "closure": "LOOP",
            "context_alignment": "MERGE",
            "logical_flow": "CASCADE",
            "affective_tension": "TIGHT",
        },
    }
    with running_server() as port:
        status, body = post_json(port, "/generate_with_speaker_module", keyed)
    assert status == 200
    assert FULL_DIRECTIVES in body["output"]


@pytest.mark.parametrize(
    "payload,code",
    [
        ({"prompt": "", "speaker_module": ["#T_NEUTRAL"]}, "InvalidRequest"),
        ({"prompt": "x", "speaker_module": ["#T_WHISPER"]}, "UnknownValue"),
        ({"prompt": "x", "speaker_module": ["#Z_NEUTRAL"]}, "UnknownPrefix"),
        ({"prompt": "x", "speaker_module": ["T_NEUTRAL"]}, "MalformedToken"),
        ({"prompt": "x", "speaker_module": {"mood": "NEUTRAL"}}, "UnknownKey"),
        ({"prompt": "x"}, "InvalidRequest"),
    ],
)
def test_validation_errors_are_400_with_code(payload, code):
    with running_server() as port:
        status, body = post_json(port, "/generate_with_speaker_module", payload)
    assert status == 400
    assert body["code"] == code
    assert isinstance(body["message"], str) and body["message"]


def test_non_json_body_is_400():
    with running_server() as port:
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}/generate_with_speaker_module",
            data=b"definitely not json",
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        try:
            urllib.request.urlopen(req, timeout=10)
            status, body = 200, {}
        except urllib.error.HTTPError as err:
            status, body = err.code, json.loads(err.read())
    assert status == 400
    assert body["code"] == "MalformedJson"


def test_unknown_path_is_404():
    with running_server() as port:
        status, body = post_json(port, "/no_such_route", {})
        get_status, _ = get_json(port, "/no_such_route")
    assert status == 404
    assert body["code"] == "NotFound"
    assert get_status == 404


class _TimeoutLlm:
    def generate(self, directives, context):
        raise LlmTimeout("backend never answered")


class _DownLlm:
    def generate(self, directives, context):
        raise LlmUnavailable("backend is down")


def test_llm_timeout_maps_to_504():
    with running_server(_TimeoutLlm()) as port:
        status, body = post_json(
            port, "/generate_with_speaker_module",
            {"prompt": "x", "speaker_module": ["#T_NEUTRAL"]},
        )
    assert status == 504
    assert body["code"] == "LlmTimeout"


def test_llm_unavailable_maps_to_502():
    with running_server(_DownLlm()) as port:
        status, body = post_json(
            port, "/generate_with_speaker_module",
            {"prompt": "x", "speaker_module": ["#T_NEUTRAL"]},
        )
    assert status == 502
    assert body["code"] == "LlmUnavailable"


def test_annotate_endpoint_matches_cli_byte_for_byte(tmp_path):
    from msa.fixtures import load_fixture
    from msa.dialogue.transcript import dump_transcript_jsonl

    fixture = load_fixture("case2")
    path = tmp_path / "case2.jsonl"
    dump_transcript_jsonl(fixture.transcript, path)
    turns = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]

    with running_server() as port:
        req = urllib.request.Request(
            f"http://127.0.0.1:{port}/annotate",
            data=json.dumps({"turns": turns}).encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )
        with urllib.request.urlopen(req, timeout=10) as resp:
            assert resp.status == 200
            service_bytes = resp.read()

    proc = subprocess.run(
        [sys.executable, "-m", "msa.cli", "annotate", str(path)],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == service_bytes


def test_analyze_graph_endpoint():
    with running_server() as port:
        status, body = post_json(
            port,
            "/analyze_graph",
            {
                "nodes": ["a", "b", "c"],
                "edges": [
                    {"from": "a", "to": "b", "utterance_index": 0},
                    {"from": "b", "to": "a", "utterance_index": 1},
                ],
            },
        )
    assert status == 200
    assert body == {
        "loops": [["a", "b"]],
        "self_retention": [],
        "exhaustive": True,
        "partial_drift": ["c"],
    }


def test_analyze_graph_rejects_bad_shape():
    with running_server() as port:
        status, body = post_json(port, "/analyze_graph", {"edges": "nope"})
    assert status == 400
    assert body["code"] == "MalformedJson"


def test_stub_generation_handles_unicode():
    body = {"prompt": "Re-read the case — it’s nuanced.", "speaker_module": ["#T_NEUTRAL"]}
    with running_server() as port:
        status, reply = post_json(port, "/generate_with_speaker_module", body)
    assert status == 200
    assert "it’s nuanced" in reply["output"]
