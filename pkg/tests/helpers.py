"""Shared test helpers: brute-force oracles and small builders.

The oracles here are deliberately naive. They enumerate candidate answers
exhaustively and check each one against the raw edge set, so they share no
code or strategy with the production graph algorithms.
"""

from __future__ import annotations

import itertools
import json
import threading
import urllib.error
import urllib.request
from contextlib import contextmanager

from msa.dialogue.transcript import DialogueTurn, Transcript
from msa.msl.graph import ResponsibilityEdge, ResponsibilityGraph


def brute_force_loops(graph: ResponsibilityGraph) -> set[tuple[str, ...]]:
    """Every elementary cycle, min-first rotation, by exhaustive enumeration.

    For each node subset, keep only subsets where every member has at least
    one in-edge and one out-edge inside the subset, then try every
    arrangement that starts at the subset minimum and check all consecutive
    pairs plus the wrap-around pair against the edge set.
    """
    pairs = {(e.source, e.target) for e in graph.edges}
    nodes = sorted(graph.nodes)
    found: set[tuple[str, ...]] = set()
    for n in nodes:
        if (n, n) in pairs:
            found.add((n,))
    for size in range(2, len(nodes) + 1):
        for subset in itertools.combinations(nodes, size):
            inside_out = {a for (a, b) in pairs if a in subset and b in subset and a != b}
            inside_in = {b for (a, b) in pairs if a in subset and b in subset and a != b}
            if any(n not in inside_out or n not in inside_in for n in subset):
                continue
            head, rest = subset[0], subset[1:]
            for perm in itertools.permutations(rest):
                seq = (head,) + perm
                closed = all(
                    (seq[i], seq[(i + 1) % size]) in pairs for i in range(size)
                )
                if closed:
                    found.add(seq)
    return found


def brute_force_drift(graph: ResponsibilityGraph) -> set[str]:
    """Nodes that never appear as an edge source."""
    sources = {e.source for e in graph.edges}
    return {n for n in graph.nodes if n not in sources}


def make_graph(nodes: list[str], pairs: list[tuple[str, str]]) -> ResponsibilityGraph:
    edges = tuple(
        ResponsibilityEdge(source=a, target=b, utterance_index=i)
        for i, (a, b) in enumerate(pairs)
    )
    return ResponsibilityGraph(nodes=frozenset(nodes), edges=edges)


def make_transcript(rows: list[tuple[str, str, str]]) -> Transcript:
    """rows: (speaker, text, turn_role) triples, indexed in order."""
    turns = tuple(
        DialogueTurn(speaker=s, text=t, turn_role=r, index=i)
        for i, (s, t, r) in enumerate(rows)
    )
    return Transcript(turns=turns)


@contextmanager
def running_server(llm=None):
    from msa.service import create_server

    server = create_server("127.0.0.1", 0, llm)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield server.server_address[1]
    finally:
        server.shutdown()
        server.server_close()


def post_json(port: int, path: str, obj: object) -> tuple[int, dict]:
    req = urllib.request.Request(
        f"http://127.0.0.1:{port}{path}",
        data=json.dumps(obj).encode("utf-8"),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req, timeout=10) as resp:
            return resp.status, json.loads(resp.read().decode("utf-8"))
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode("utf-8"))


def get_json(port: int, path: str) -> tuple[int, dict]:
    try:
        with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}", timeout=10) as resp:
            return resp.status, json.loads(resp.read().decode("utf-8"))
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read().decode("utf-8"))
