"""Responsibility-transfer graph analysis and context constraints."""

from .cycles import (
    EXHAUSTIVE_NODE_LIMIT,
    cyclic_components,
    detect_closed_loops,
    is_closed_loop,
)
from .graph import (
    GraphBuilder,
    ResponsibilityEdge,
    ResponsibilityGraph,
    SpeakerId,
    add_transfer,
    detect_partial_drift,
    transitive_closure,
)
from .rules import (
    ContextRule,
    OpCounter,
    RuleFinding,
    check_context_constraints,
    load_context_rules,
)

__all__ = [
    "EXHAUSTIVE_NODE_LIMIT",
    "ContextRule",
    "GraphBuilder",
    "OpCounter",
    "ResponsibilityEdge",
    "ResponsibilityGraph",
    "RuleFinding",
    "SpeakerId",
    "add_transfer",
    "check_context_constraints",
    "cyclic_components",
    "detect_closed_loops",
    "detect_partial_drift",
    "is_closed_loop",
    "load_context_rules",
    "transitive_closure",
]
