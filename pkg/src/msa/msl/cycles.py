"""Closed-loop detection over responsibility graphs.

A closed loop is an elementary directed cycle: every node on it is distinct.
Loops are reported in canonical rotation (lexicographically smallest node
first), parallel edges collapse to one adjacency, and a self-edge counts as a
length-1 loop. Enumeration is inherently exponential in the worst case, so
exhaustive mode refuses graphs beyond EXHAUSTIVE_NODE_LIMIT nodes; above the
limit callers fall back to cyclic_components, which only names the strongly
connected components that contain a cycle.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ..errors import GraphTooLarge
from .graph import ResponsibilityGraph, SpeakerId

EXHAUSTIVE_NODE_LIMIT = 10_000


def _tarjan_sccs(adj: dict[str, set[str]]) -> list[set[str]]:
    """Strongly connected components, iteratively (no recursion limit issues)."""
    index_of: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[set[str]] = []
    counter = 0

    for root in adj:
        if root in index_of:
            continue
        work: list[tuple[str, Iterable[str]]] = [(root, iter(adj[root]))]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, successors = work[-1]
            advanced = False
            for succ in successors:
                if succ not in index_of:
                    index_of[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adj[succ])))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index_of[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index_of[node]:
                component: set[str] = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                sccs.append(component)
    return sccs


def _reaches(adj: dict[str, set[str]], allowed: set[str], goal: str) -> set[str]:
    """Nodes in ``allowed`` that can reach ``goal`` through ``allowed``."""
    reverse: dict[str, set[str]] = {node: set() for node in allowed}
    for node in allowed:
        for succ in adj[node]:
            if succ in allowed:
                reverse[succ].add(node)
    found = {goal}
    frontier = [goal]
    while frontier:
        node = frontier.pop()
        for pred in reverse[node]:
            if pred not in found:
                found.add(pred)
                frontier.append(pred)
    return found


def detect_closed_loops(graph: ResponsibilityGraph) -> frozenset[tuple[SpeakerId, ...]]:
    """Every elementary directed cycle, canonically rotated, exactly once.

    Raises GraphTooLarge when the node count exceeds EXHAUSTIVE_NODE_LIMIT;
    use cyclic_components for graphs of that size.
    """
    if len(graph.nodes) > EXHAUSTIVE_NODE_LIMIT:
        raise GraphTooLarge(
            f"{len(graph.nodes)} nodes exceeds the exhaustive limit of "
            f"{EXHAUSTIVE_NODE_LIMIT}; use cyclic_components instead"
        )
    adj = graph.adjacency()
    loops: set[tuple[SpeakerId, ...]] = set()
    for node in sorted(adj):
        if node in adj[node]:
            loops.add((node,))

    # Cycles of length >= 2 live entirely inside one SCC. Within each SCC,
    # anchor the search at each node in ascending order and only walk nodes
    # that are lexicographically greater than the anchor and can still reach
    # it, which yields each cycle exactly once, already in canonical rotation.
    for component in _tarjan_sccs(adj):
        if len(component) < 2:
            continue
        for anchor in sorted(component):
            allowed = {n for n in component if n >= anchor}
            useful = _reaches(adj, allowed, anchor)
            step = {n: sorted(s for s in adj[n] if s in useful) for n in useful}
            path = [anchor]
            on_path = {anchor}
            iters = [iter(step[anchor])]
            while iters:
                try:
                    succ = next(iters[-1])
                except StopIteration:
                    iters.pop()
                    on_path.discard(path.pop())
                    continue
                if succ == anchor:
                    if len(path) >= 2:
                        loops.add(tuple(path))
                    continue
                if succ in on_path:
                    continue
                path.append(succ)
                on_path.add(succ)
                iters.append(iter(step[succ]))
    return frozenset(loops)


def cyclic_components(graph: ResponsibilityGraph) -> frozenset[frozenset[SpeakerId]]:
    """Strongly connected components that contain at least one cycle.

    The scalable summary for graphs too large to enumerate: every closed loop
    is confined to exactly one of the reported components.
    """
    adj = graph.adjacency()
    out: set[frozenset[SpeakerId]] = set()
    for component in _tarjan_sccs(adj):
        if len(component) > 1:
            out.add(frozenset(component))
        else:
            (node,) = component
            if node in adj[node]:
                out.add(frozenset(component))
    return frozenset(out)


def is_closed_loop(graph: ResponsibilityGraph, sequence: Sequence[SpeakerId]) -> bool:
    """Sequence-mode check: does ``sequence`` trace a closed loop edge by edge?

    Requires a transfer from each element to the next and from the last back
    to the first. A one-element sequence therefore needs a self-edge. Repeated
    nodes make the sequence non-elementary, which is rejected.
    """
    if not sequence:
        return False
    if len(set(sequence)) != len(sequence):
        return False
    adj = graph.adjacency()
    for node in sequence:
        if node not in adj:
            return False
    n = len(sequence)
    return all(sequence[(i + 1) % n] in adj[sequence[i]] for i in range(n))
