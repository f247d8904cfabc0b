"""The six pragmatic control dimensions and their surface prefixes."""

from __future__ import annotations

from enum import Enum


class Dimension(Enum):
    """Closed set of control dimensions, in canonical serialization order."""

    TONE = "tone"
    POSITION = "position"
    CLOSURE = "closure"
    CONTEXT_ALIGNMENT = "context_alignment"
    LOGICAL_FLOW = "logical_flow"
    AFFECTIVE_TENSION = "affective_tension"

    @property
    def key(self) -> str:
        """Key used by the keyed-object JSON form."""
        return self.value

    @property
    def prefix(self) -> str:
        """Surface prefix used by the ``#<PREFIX>_<VALUE>`` form."""
        return _PREFIX_OF[self]


DIMENSION_ORDER: tuple[Dimension, ...] = tuple(Dimension)

_PREFIX_OF = {
    Dimension.TONE: "T",
    Dimension.POSITION: "P",
    Dimension.CLOSURE: "C",
    Dimension.CONTEXT_ALIGNMENT: "CTX",
    Dimension.LOGICAL_FLOW: "L",
    Dimension.AFFECTIVE_TENSION: "E",
}

# the prefix map is bijective, so both lookups are total
DIMENSION_BY_PREFIX = {prefix: dim for dim, prefix in _PREFIX_OF.items()}
DIMENSION_BY_KEY = {dim.key: dim for dim in Dimension}
