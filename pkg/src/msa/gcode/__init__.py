"""Pragmatic control tag language: parse, canonicalize, compile, infer."""

from .dimensions import DIMENSION_BY_KEY, DIMENSION_BY_PREFIX, DIMENSION_ORDER, Dimension
from .inference import (
    InferenceRule,
    default_inference_rules,
    infer_tags,
    load_inference_rules,
)
from .registry import TagRegistry, load_registry
from .tags import (
    GCodeTag,
    SpeakerModuleConfig,
    build_prompt_directives,
    config_from_keyed_object,
    parse_config_document,
    parse_config_object,
    parse_tag,
    parse_tag_list,
    speaker_module_from_obj,
)

__all__ = [
    "DIMENSION_BY_KEY",
    "DIMENSION_BY_PREFIX",
    "DIMENSION_ORDER",
    "Dimension",
    "GCodeTag",
    "InferenceRule",
    "SpeakerModuleConfig",
    "TagRegistry",
    "build_prompt_directives",
    "config_from_keyed_object",
    "default_inference_rules",
    "infer_tags",
    "load_inference_rules",
    "load_registry",
    "parse_config_document",
    "parse_config_object",
    "parse_tag",
    "parse_tag_list",
    "speaker_module_from_obj",
]
