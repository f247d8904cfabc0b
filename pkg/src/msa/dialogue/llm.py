"""Language-model clients behind one small protocol.

generate() takes the compiled directive string and the running context and
returns the reply text. The stub client is fully deterministic and is what
tests and offline simulation use. The remote client speaks a minimal
JSON-over-HTTP contract and is configured from the environment:

    MSA_LLM_BASE_URL   endpoint receiving POST requests (required)
    MSA_LLM_MODEL      model name forwarded in the payload
    MSA_LLM_TOKEN      bearer token, sent when present

Request body: {"model": ..., "directives": ..., "messages": [{"role",
"content"}, ...]}. Expected response body: {"output": "..."}.
"""

from __future__ import annotations

import json
import os
import socket
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Protocol, TYPE_CHECKING

from ..errors import LlmTimeout, LlmUnavailable

if TYPE_CHECKING:
    from .transcript import Transcript

ENV_BASE_URL = "MSA_LLM_BASE_URL"
ENV_MODEL = "MSA_LLM_MODEL"
ENV_TOKEN = "MSA_LLM_TOKEN"


class LlmClient(Protocol):
    def generate(self, directives: str, context: "Transcript") -> str: ...


@dataclass(frozen=True)
class StubLlmClient:
    """Deterministic echo client; same inputs give byte-identical output."""

    def generate(self, directives: str, context: "Transcript") -> str:
        last = context.turns[-1].text if context.turns else ""
        return f"<ECHO directives='{directives}' last='{last}'>"


@dataclass(frozen=True)
class RemoteLlmClient:
    base_url: str
    model: str = "default"
    token: str | None = None
    timeout: float = 30.0
    retries: int = 2

    @classmethod
    def from_env(cls, timeout: float = 30.0, retries: int = 2) -> "RemoteLlmClient":
        base_url = os.environ.get(ENV_BASE_URL, "")
        if not base_url:
            raise LlmUnavailable(f"{ENV_BASE_URL} is not set")
        return cls(
            base_url=base_url,
            model=os.environ.get(ENV_MODEL, "default"),
            token=os.environ.get(ENV_TOKEN) or None,
            timeout=timeout,
            retries=retries,
        )

    def generate(self, directives: str, context: "Transcript") -> str:
        payload = json.dumps(
            {
                "model": self.model,
                "directives": directives,
                "messages": [
                    {"role": turn.turn_role, "content": turn.text} for turn in context.turns
                ],
            }
        ).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"

        last_error: Exception | None = None
        timed_out = False
        for _ in range(self.retries + 1):
            request = urllib.request.Request(self.base_url, data=payload, headers=headers)
            try:
                with urllib.request.urlopen(request, timeout=self.timeout) as response:
                    body = json.loads(response.read().decode("utf-8"))
                    output = body.get("output")
                    if not isinstance(output, str):
                        raise LlmUnavailable(f"backend returned no 'output' field: {body!r}")
                    return output
            except (socket.timeout, TimeoutError) as exc:
                last_error, timed_out = exc, True
            except urllib.error.URLError as exc:
                if isinstance(exc.reason, (socket.timeout, TimeoutError)):
                    timed_out = True
                last_error = exc
            except (OSError, ValueError) as exc:
                last_error = exc
        if timed_out:
            raise LlmTimeout(f"no reply from {self.base_url} in {self.timeout}s") from last_error
        raise LlmUnavailable(f"{self.base_url} unreachable: {last_error}") from last_error


def client_from_name(name: str, timeout: float = 30.0, retries: int = 2) -> LlmClient:
    """Resolve 'stub' or 'remote' to a configured client."""
    if name == "stub":
        return StubLlmClient()
    if name == "remote":
        return RemoteLlmClient.from_env(timeout=timeout, retries=retries)
    raise LlmUnavailable(f"unknown llm client {name!r} (expected 'stub' or 'remote')")
