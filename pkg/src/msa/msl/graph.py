"""Responsibility-transfer graphs.

Nodes are speaker ids, edges are individual transfer events. The edge list is
an insertion-ordered multiset: parallel edges and self-edges are both legal
and preserved. Graphs are values; mutation returns a new graph. For long
tracking runs the single-writer GraphBuilder appends in amortized constant
time so that ingesting n utterances costs O(n) total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import MalformedJson, UnknownSpeaker

SpeakerId = str


def _check_speaker(speaker: object) -> str:
    if not isinstance(speaker, str) or not speaker:
        raise UnknownSpeaker(f"speaker id must be a non-empty string, got {speaker!r}")
    return speaker


@dataclass(frozen=True)
class ResponsibilityEdge:
    """One directed transfer event. ``source`` took an obligation to ``target``."""

    source: SpeakerId
    target: SpeakerId
    utterance_index: int | None = None
    label: str | None = None

    def __post_init__(self) -> None:
        _check_speaker(self.source)
        _check_speaker(self.target)

    def to_dict(self) -> dict[str, object]:
        out: dict[str, object] = {"from": self.source, "to": self.target}
        if self.utterance_index is not None:
            out["utterance_index"] = self.utterance_index
        if self.label is not None:
            out["label"] = self.label
        return out

    @classmethod
    def from_dict(cls, obj: Mapping[str, object]) -> "ResponsibilityEdge":
        if "from" not in obj or "to" not in obj:
            raise MalformedJson(f"edge object needs 'from' and 'to': {dict(obj)!r}")
        index = obj.get("utterance_index")
        if index is not None and not isinstance(index, int):
            raise MalformedJson(f"utterance_index must be an integer, got {index!r}")
        label = obj.get("label")
        if label is not None and not isinstance(label, str):
            raise MalformedJson(f"label must be a string, got {label!r}")
        return cls(
            source=_check_speaker(obj["from"]),
            target=_check_speaker(obj["to"]),
            utterance_index=index,
            label=label,
        )


@dataclass(frozen=True)
class ResponsibilityGraph:
    nodes: frozenset[SpeakerId] = frozenset()
    edges: tuple[ResponsibilityEdge, ...] = ()

    def with_node(self, speaker: SpeakerId) -> "ResponsibilityGraph":
        _check_speaker(speaker)
        return ResponsibilityGraph(nodes=self.nodes | {speaker}, edges=self.edges)

    def with_transfer(
        self, edge: ResponsibilityEdge, auto_register: bool = False
    ) -> "ResponsibilityGraph":
        """New graph with ``edge`` appended.

        Unknown endpoints raise UnknownSpeaker unless ``auto_register`` is on,
        in which case they are added as nodes first.
        """
        nodes = self.nodes
        for endpoint in (edge.source, edge.target):
            if endpoint not in nodes:
                if not auto_register:
                    raise UnknownSpeaker(f"{endpoint!r} is not a registered speaker")
                nodes = nodes | {endpoint}
        return ResponsibilityGraph(nodes=nodes, edges=self.edges + (edge,))

    def out_degree(self) -> dict[SpeakerId, int]:
        degree = {node: 0 for node in self.nodes}
        for edge in self.edges:
            degree[edge.source] += 1
        return degree

    def adjacency(self) -> dict[SpeakerId, set[SpeakerId]]:
        """Successor sets with parallel edges collapsed."""
        adj: dict[SpeakerId, set[SpeakerId]] = {node: set() for node in self.nodes}
        for edge in self.edges:
            adj[edge.source].add(edge.target)
        return adj

    def to_dict(self) -> dict[str, object]:
        return {
            "nodes": sorted(self.nodes),
            "edges": [edge.to_dict() for edge in self.edges],
        }

    @classmethod
    def from_dict(cls, obj: Mapping[str, object]) -> "ResponsibilityGraph":
        if not isinstance(obj, Mapping):
            raise MalformedJson(f"graph must be a JSON object, got {type(obj).__name__}")
        raw_nodes = obj.get("nodes", [])
        raw_edges = obj.get("edges", [])
        if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
            raise MalformedJson("graph 'nodes' and 'edges' must be arrays")
        nodes = frozenset(_check_speaker(n) for n in raw_nodes)
        edges = []
        for raw in raw_edges:
            edge = ResponsibilityEdge.from_dict(raw)
            for endpoint in (edge.source, edge.target):
                if endpoint not in nodes:
                    raise UnknownSpeaker(f"edge endpoint {endpoint!r} missing from nodes")
            edges.append(edge)
        return cls(nodes=nodes, edges=tuple(edges))


def add_transfer(
    graph: ResponsibilityGraph, edge: ResponsibilityEdge, auto_register: bool = False
) -> ResponsibilityGraph:
    """Functional append; copies the edge tuple, so it is O(V+E) per call.

    Use GraphBuilder for the linear-time tracking path.
    """
    return graph.with_transfer(edge, auto_register=auto_register)


class GraphBuilder:
    """Single-writer accumulator with amortized O(1) appends.

    ``ops`` counts the elementary membership checks, node inserts, and edge
    appends performed, so callers can verify the linear total-work bound.
    """

    def __init__(self, auto_register: bool = True) -> None:
        self._nodes: set[SpeakerId] = set()
        self._edges: list[ResponsibilityEdge] = []
        self._auto_register = auto_register
        self.ops = 0

    def add_node(self, speaker: SpeakerId) -> None:
        _check_speaker(speaker)
        self.ops += 1
        self._nodes.add(speaker)

    def add_transfer(self, edge: ResponsibilityEdge) -> None:
        for endpoint in (edge.source, edge.target):
            self.ops += 1  # membership check
            if endpoint not in self._nodes:
                if not self._auto_register:
                    raise UnknownSpeaker(f"{endpoint!r} is not a registered speaker")
                self.ops += 1  # node insert
                self._nodes.add(endpoint)
        self.ops += 1  # edge append
        self._edges.append(edge)

    def build(self) -> ResponsibilityGraph:
        return ResponsibilityGraph(nodes=frozenset(self._nodes), edges=tuple(self._edges))


def detect_partial_drift(graph: ResponsibilityGraph) -> frozenset[SpeakerId]:
    """Speakers that never transfer responsibility onward (out-degree zero)."""
    degree = graph.out_degree()
    return frozenset(node for node, out in degree.items() if out == 0)


def transitive_closure(graph: ResponsibilityGraph) -> frozenset[tuple[SpeakerId, SpeakerId]]:
    """All (x, y) pairs connected by a transfer path of length >= 1.

    Closure is an explicit, separate operation. Loop and drift detection work
    on the raw relation and never apply it implicitly.
    """
    adj = graph.adjacency()
    reachable: set[tuple[SpeakerId, SpeakerId]] = set()
    for start in graph.nodes:
        frontier = list(adj[start])
        seen: set[SpeakerId] = set()
        while frontier:
            node = frontier.pop()
            if node in seen:
                continue
            seen.add(node)
            reachable.add((start, node))
            frontier.extend(adj[node] - seen)
    return frozenset(reachable)
