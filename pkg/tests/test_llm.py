"""LLM client behavior: stub echo format, remote wire protocol, failure modes."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest

from msa.dialogue.llm import (
    ENV_BASE_URL,
    ENV_MODEL,
    RemoteLlmClient,
    StubLlmClient,
    client_from_name,
)
from msa.errors import LlmTimeout, LlmUnavailable
from helpers import make_transcript


def test_stub_echo_shape():
    ctx = make_transcript([("u", "check the logs", "user")])
    out = StubLlmClient().generate("[TONE=NEUTRAL]", ctx)
    assert out == "<ECHO directives='[TONE=NEUTRAL]' last='check the logs'>"


def test_stub_is_deterministic():
    ctx = make_transcript([("u", "same input", "user")])
    stub = StubLlmClient()
    assert stub.generate("[TONE=FLAT]", ctx) == stub.generate("[TONE=FLAT]", ctx)


def test_client_from_name():
    assert isinstance(client_from_name("stub"), StubLlmClient)
    with pytest.raises(LlmUnavailable):
        client_from_name("nonsense")


def test_remote_from_env_requires_base_url(monkeypatch):
    monkeypatch.delenv(ENV_BASE_URL, raising=False)
    with pytest.raises(LlmUnavailable):
        RemoteLlmClient.from_env()


class _Script(BaseHTTPRequestHandler):
    """One-behavior fake endpoint; the behavior is set on the server object."""

    def log_message(self, *args):  # quiet
        pass

    def do_POST(self):
        body = json.loads(self.rfile.read(int(self.headers["Content-Length"])))
        self.server.seen.append(body)
        mode = self.server.mode
        if mode == "ok":
            payload = json.dumps({"output": f"reply to {body['messages'][-1]['content']}"})
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.end_headers()
            self.wfile.write(payload.encode())
        elif mode == "missing-field":
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.end_headers()
            self.wfile.write(b'{"unexpected": true}')
        else:  # error
            self.send_response(500)
            self.end_headers()


@pytest.fixture
def fake_endpoint():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _Script)
    server.mode = "ok"
    server.seen = []
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server
    server.shutdown()
    server.server_close()


def _client_for(server, **kw):
    port = server.server_address[1]
    return RemoteLlmClient(base_url=f"http://127.0.0.1:{port}", model="test-model", **kw)


def test_remote_round_trip(fake_endpoint):
    client = _client_for(fake_endpoint)
    ctx = make_transcript([("u", "ping", "user"), ("a", "pong", "assistant")])
    out = client.generate("[TONE=NEUTRAL]", ctx)
    assert out == "reply to pong"
    sent = fake_endpoint.seen[0]
    assert sent["model"] == "test-model"
    assert sent["directives"] == "[TONE=NEUTRAL]"
    assert sent["messages"] == [
        {"role": "user", "content": "ping"},
        {"role": "assistant", "content": "pong"},
    ]


def test_remote_env_construction(fake_endpoint, monkeypatch):
    port = fake_endpoint.server_address[1]
    monkeypatch.setenv(ENV_BASE_URL, f"http://127.0.0.1:{port}")
    monkeypatch.setenv(ENV_MODEL, "env-model")
    client = RemoteLlmClient.from_env()
    ctx = make_transcript([("u", "hello", "user")])
    client.generate("", ctx)
    assert fake_endpoint.seen[0]["model"] == "env-model"


def test_remote_server_error_maps_to_unavailable(fake_endpoint):
    fake_endpoint.mode = "error"
    client = _client_for(fake_endpoint, retries=1)
    ctx = make_transcript([("u", "ping", "user")])
    with pytest.raises(LlmUnavailable):
        client.generate("", ctx)
    assert len(fake_endpoint.seen) == 2  # first try plus one retry


def test_remote_missing_output_field(fake_endpoint):
    fake_endpoint.mode = "missing-field"
    client = _client_for(fake_endpoint, retries=0)
    ctx = make_transcript([("u", "ping", "user")])
    with pytest.raises(LlmUnavailable):
        client.generate("", ctx)


def test_remote_connection_refused_is_unavailable():
    client = RemoteLlmClient(base_url="http://127.0.0.1:1", model="m", retries=0)
    ctx = make_transcript([("u", "ping", "user")])
    with pytest.raises(LlmUnavailable):
        client.generate("", ctx)


def test_remote_timeout():
    # a listener that accepts the connection and then stays silent
    import socket

    listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    listener.bind(("127.0.0.1", 0))
    listener.listen(1)
    port = listener.getsockname()[1]
    try:
        client = RemoteLlmClient(
            base_url=f"http://127.0.0.1:{port}", model="m", timeout=0.2, retries=0
        )
        ctx = make_transcript([("u", "ping", "user")])
        with pytest.raises(LlmTimeout):
            client.generate("", ctx)
    finally:
        listener.close()
