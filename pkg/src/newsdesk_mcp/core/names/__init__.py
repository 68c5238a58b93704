"""Name recognition, transliteration, canonical forms and the entity store."""

from newsdesk_mcp.core.names.canonical import (
    NormRules,
    canonicalize,
    levenshtein,
    load_rules,
    normalize,
    similarity,
)
from newsdesk_mcp.core.names.params import LanguageParams, load_params
from newsdesk_mcp.core.names.recognizer import recognize_names
from newsdesk_mcp.core.names.store import (
    EntityStore,
    PairStats,
    cooccurrence,
    entity_vector,
    merge_variant,
)
from newsdesk_mcp.core.names.translit import Transliterator, load_transliterator, transliterate

__all__ = [
    "EntityStore",
    "LanguageParams",
    "NormRules",
    "PairStats",
    "Transliterator",
    "canonicalize",
    "cooccurrence",
    "entity_vector",
    "levenshtein",
    "load_params",
    "load_rules",
    "load_transliterator",
    "merge_variant",
    "normalize",
    "recognize_names",
    "similarity",
    "transliterate",
]
