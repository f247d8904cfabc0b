"""Parsing, canonicalization, and compilation of pragmatic control tags.

Surface form is ``#<PREFIX>_<VALUE>`` with prefixes T, P, C, CTX, L, and E.
Input is case-insensitive everywhere; canonical output is uppercase. A
speaker-module configuration also round-trips through two JSON forms: a list
of tag surfaces and a keyed object such as ``{"tone": "SOFTASSERT", ...}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import (
    DuplicateDimension,
    MalformedJson,
    MalformedToken,
    UnknownKey,
    UnknownPrefix,
    UnknownValue,
)
from .dimensions import DIMENSION_BY_KEY, DIMENSION_BY_PREFIX, DIMENSION_ORDER, Dimension
from .registry import TagRegistry, load_registry


@dataclass(frozen=True)
class GCodeTag:
    """One validated (dimension, value) pair."""

    dimension: Dimension
    value: str

    @property
    def surface(self) -> str:
        return f"#{self.dimension.prefix}_{self.value}"


@dataclass(frozen=True)
class SpeakerModuleConfig:
    """Immutable partial assignment of tags to dimensions.

    Tags are stored in canonical dimension order, so two configs built from
    the same assignments compare equal regardless of input order.
    """

    tags: tuple[GCodeTag, ...] = ()
    speaker_id: str | None = None

    def __post_init__(self) -> None:
        seen: set[Dimension] = set()
        for tag in self.tags:
            if tag.dimension in seen:
                raise DuplicateDimension(f"dimension {tag.dimension.name} set twice")
            seen.add(tag.dimension)
        ordered = tuple(sorted(self.tags, key=lambda t: DIMENSION_ORDER.index(t.dimension)))
        object.__setattr__(self, "tags", ordered)

    def get(self, dimension: Dimension) -> GCodeTag | None:
        for tag in self.tags:
            if tag.dimension is dimension:
                return tag
        return None

    def with_tag(self, tag: GCodeTag) -> "SpeakerModuleConfig":
        """Copy with ``tag`` set, overriding any prior value for its dimension."""
        kept = tuple(t for t in self.tags if t.dimension is not tag.dimension)
        return SpeakerModuleConfig(tags=kept + (tag,), speaker_id=self.speaker_id)

    @property
    def is_empty(self) -> bool:
        return not self.tags

    def to_tag_list(self) -> list[str]:
        return [tag.surface for tag in self.tags]

    def to_keyed_object(self) -> dict[str, str]:
        return {tag.dimension.key: tag.value for tag in self.tags}

    def to_document(self) -> dict[str, dict[str, str]]:
        """The single-speaker configuration document shape."""
        return {"speaker_module": self.to_keyed_object()}


def parse_tag(surface: str, registry: TagRegistry | None = None) -> GCodeTag:
    """Parse one tag surface into a canonical GCodeTag.

    Raises:
        MalformedToken: missing ``#``, missing ``_``, or embedded whitespace.
        UnknownPrefix: prefix not in the closed prefix set.
        UnknownValue: value not registered for the prefix's dimension.
    """
    if not isinstance(surface, str):
        raise MalformedToken(f"tag surface must be a string, got {type(surface).__name__}")
    token = surface.strip()
    if not token.startswith("#"):
        raise MalformedToken(f"{surface!r}: tag must start with '#'")
    if len(token.split()) != 1:
        raise MalformedToken(f"{surface!r}: tag must be a single token")
    body = token[1:]
    if "_" not in body:
        raise MalformedToken(f"{surface!r}: expected '#PREFIX_VALUE'")
    prefix_part, value_part = body.split("_", 1)
    prefix = prefix_part.upper()
    dimension = DIMENSION_BY_PREFIX.get(prefix)
    if dimension is None:
        raise UnknownPrefix(f"{surface!r}: unknown prefix {prefix!r}")
    value = value_part.upper()
    reg = registry or load_registry()
    if not reg.is_registered(dimension, value):
        raise UnknownValue(f"{surface!r}: {value!r} is not registered for {dimension.name}")
    return GCodeTag(dimension=dimension, value=value)


def parse_tag_list(
    surfaces: Sequence[str], registry: TagRegistry | None = None
) -> SpeakerModuleConfig:
    """Parse a sequence of tag surfaces into a config.

    Raises DuplicateDimension when two tags target the same dimension.
    """
    reg = registry or load_registry()
    tags: list[GCodeTag] = []
    seen: set[Dimension] = set()
    for surface in surfaces:
        tag = parse_tag(surface, reg)
        if tag.dimension in seen:
            raise DuplicateDimension(
                f"{surface!r}: dimension {tag.dimension.name} already set"
            )
        seen.add(tag.dimension)
        tags.append(tag)
    return SpeakerModuleConfig(tags=tuple(tags))


def config_from_keyed_object(
    obj: Mapping[str, object], registry: TagRegistry | None = None
) -> SpeakerModuleConfig:
    """Build a config from an already-parsed keyed object."""
    reg = registry or load_registry()
    tags: list[GCodeTag] = []
    for key, raw_value in obj.items():
        dimension = DIMENSION_BY_KEY.get(str(key).lower())
        if dimension is None:
            raise UnknownKey(f"unknown dimension key {key!r}")
        if not isinstance(raw_value, str):
            raise UnknownValue(f"{key}: value must be a string, got {raw_value!r}")
        value = raw_value.upper()
        if not reg.is_registered(dimension, value):
            raise UnknownValue(f"{key}: {raw_value!r} is not registered for {dimension.name}")
        tags.append(GCodeTag(dimension=dimension, value=value))
    return SpeakerModuleConfig(tags=tuple(tags))


def parse_config_object(json_text: str, registry: TagRegistry | None = None) -> SpeakerModuleConfig:
    """Parse the keyed-object JSON form from raw text.

    Raises MalformedJson when the text is not a JSON object, UnknownKey for
    keys outside the six dimension keys, and UnknownValue for unregistered
    values.
    """
    try:
        obj = json.loads(json_text)
    except ValueError as exc:
        raise MalformedJson(str(exc)) from exc
    if not isinstance(obj, dict):
        raise MalformedJson(f"expected a JSON object, got {type(obj).__name__}")
    return config_from_keyed_object(obj, registry)


def speaker_module_from_obj(
    obj: object, registry: TagRegistry | None = None
) -> SpeakerModuleConfig:
    """Accept either wire form of a speaker module.

    Lists are treated as tag-surface lists, objects as keyed objects. A
    one-key ``{"speaker_module": ...}`` wrapper document is unwrapped first.
    """
    if isinstance(obj, dict) and set(obj) == {"speaker_module"}:
        obj = obj["speaker_module"]
    if isinstance(obj, list):
        return parse_tag_list(obj, registry)
    if isinstance(obj, dict):
        return config_from_keyed_object(obj, registry)
    raise MalformedJson(
        f"speaker module must be a tag list or keyed object, got {type(obj).__name__}"
    )


def parse_config_document(json_text: str, registry: TagRegistry | None = None) -> SpeakerModuleConfig:
    """Parse any accepted JSON document form of a speaker module."""
    try:
        obj = json.loads(json_text)
    except ValueError as exc:
        raise MalformedJson(str(exc)) from exc
    return speaker_module_from_obj(obj, registry)


def build_prompt_directives(config: SpeakerModuleConfig) -> str:
    """Compile a config to the directive string injected into prompts.

    One ``[KEY=VALUE]`` segment per configured dimension, space-joined, in
    canonical dimension order. Pure: no I/O, no hidden state.
    """
    return " ".join(f"[{tag.dimension.key.upper()}={tag.value}]" for tag in config.tags)
