"""Minimal threaded HTTP surface over the engine.

Endpoints:
    POST /generate_with_speaker_module  {"prompt", "speaker_module"} -> {"output"}
    POST /annotate                      transcript turns -> score card
    POST /analyze_graph                 graph JSON -> loops and drift summary
    GET  /health                        {"status": "ok"}

/generate_with_speaker_module is the simulation shell's core endpoint; the
other three are auxiliary tooling. Validation failures return a 4xx with a
structured body {"code", "message"} (plus "detail" when available), where the
code is the error class name, e.g. UnknownValue, DuplicateDimension,
MalformedJson, UnknownKey.

The service holds no mutable state: the registry is read once at startup and
every request is handled from scratch, so the threading server is safe.
"""

from __future__ import annotations

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .dialogue.llm import LlmClient, StubLlmClient
from .dialogue.transcript import DialogueTurn, Transcript
from .errors import InvalidRequest, LlmTimeout, LlmUnavailable, MalformedJson, MsaError
from .gcode.registry import TagRegistry, load_registry
from .gcode.tags import build_prompt_directives, speaker_module_from_obj
from .msl.cycles import EXHAUSTIVE_NODE_LIMIT, cyclic_components, detect_closed_loops
from .msl.graph import ResponsibilityGraph, detect_partial_drift
from .scoring.report import annotate_transcript, scorecard_json

MAX_BODY_BYTES = 4 * 1024 * 1024


def analyze_graph_report(graph: ResponsibilityGraph) -> dict[str, object]:
    """Loop and drift summary shared by the CLI and the HTTP endpoint.

    Above the exhaustive node limit this degrades to naming the cyclic
    strongly connected components instead of enumerating loops.
    """
    report: dict[str, object] = {}
    if len(graph.nodes) > EXHAUSTIVE_NODE_LIMIT:
        components = cyclic_components(graph)
        report["loops"] = None
        report["self_retention"] = None
        report["cyclic_components"] = sorted(sorted(c) for c in components)
        report["exhaustive"] = False
    else:
        loops = detect_closed_loops(graph)
        report["loops"] = sorted((list(loop) for loop in loops), key=lambda l: (len(l), l))
        report["self_retention"] = sorted(loop[0] for loop in loops if len(loop) == 1)
        report["exhaustive"] = True
    report["partial_drift"] = sorted(detect_partial_drift(graph))
    return report


def generate_output(
    prompt: str, speaker_module: object, llm: LlmClient, registry: TagRegistry
) -> dict[str, str]:
    if not isinstance(prompt, str) or not prompt.strip():
        raise InvalidRequest("prompt must be a non-empty string")
    config = speaker_module_from_obj(speaker_module, registry)
    directives = build_prompt_directives(config)
    context = Transcript(
        turns=(DialogueTurn(speaker="user", text=prompt, turn_role="user", index=0),)
    )
    return {"output": llm.generate(directives, context)}


class MsaHttpServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], llm: LlmClient | None = None) -> None:
        self.llm = llm or StubLlmClient()
        self.registry = load_registry()  # startup fails here on a bad registry
        super().__init__(address, MsaRequestHandler)


class MsaRequestHandler(BaseHTTPRequestHandler):
    server: MsaHttpServer
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args: object) -> None:  # noqa: A002
        pass  # keep test output quiet; operators can wrap serve() for logging

    def _send(self, status: int, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: dict[str, object]) -> None:
        self._send(status, (json.dumps(payload, ensure_ascii=False) + "\n").encode("utf-8"))

    def _send_error(self, status: int, code: str, message: str) -> None:
        self._send_json(status, {"code": code, "message": message})

    def _read_body(self) -> object:
        length = int(self.headers.get("Content-Length", 0) or 0)
        if length > MAX_BODY_BYTES:
            raise InvalidRequest(f"body exceeds {MAX_BODY_BYTES} bytes")
        raw = self.rfile.read(length) if length else b""
        if not raw:
            raise MalformedJson("empty request body")
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, ValueError) as exc:
            raise MalformedJson(str(exc)) from exc

    def do_GET(self) -> None:
        if self.path == "/health":
            self._send_json(200, {"status": "ok"})
        else:
            self._send_error(404, "NotFound", f"no route for GET {self.path}")

    def do_POST(self) -> None:
        try:
            body = self._read_body()
            if self.path == "/generate_with_speaker_module":
                if not isinstance(body, dict):
                    raise InvalidRequest("request body must be a JSON object")
                if "speaker_module" not in body:
                    raise InvalidRequest("request needs a 'speaker_module' field")
                payload = generate_output(
                    body.get("prompt", ""),
                    body["speaker_module"],
                    self.server.llm,
                    self.server.registry,
                )
                self._send_json(200, payload)
            elif self.path == "/annotate":
                if not isinstance(body, dict) or "turns" not in body:
                    raise InvalidRequest("request needs a 'turns' array")
                turns = body["turns"]
                if not isinstance(turns, list) or not turns:
                    raise InvalidRequest("'turns' must be a non-empty array")
                transcript = Transcript.from_dicts(turns)
                card = annotate_transcript(transcript)
                self._send(200, scorecard_json(card).encode("utf-8"))
            elif self.path == "/analyze_graph":
                if not isinstance(body, dict):
                    raise InvalidRequest("request body must be a JSON object")
                graph = ResponsibilityGraph.from_dict(body)
                self._send_json(200, analyze_graph_report(graph))
            else:
                self._send_error(404, "NotFound", f"no route for POST {self.path}")
        except LlmTimeout as exc:
            self._send_error(504, exc.code, str(exc))
        except LlmUnavailable as exc:
            self._send_error(502, exc.code, str(exc))
        except MsaError as exc:
            self._send_error(400, exc.code, str(exc))
        except Exception as exc:  # pragma: no cover - last-resort guard
            self._send_error(500, "InternalError", str(exc))


def create_server(host: str = "127.0.0.1", port: int = 0, llm: LlmClient | None = None) -> MsaHttpServer:
    return MsaHttpServer((host, port), llm=llm)


def serve(host: str, port: int, llm: LlmClient | None = None) -> None:
    """Run until interrupted."""
    server = create_server(host, port, llm)
    try:
        server.serve_forever()
    finally:
        server.server_close()
