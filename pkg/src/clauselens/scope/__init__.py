"""Vector retrieval and Phrase Scope generation."""

from .generate import (
    SCENARIO_WORD_LIMIT,
    Answer,
    PhraseScopeResult,
    ScopeGenerator,
)
from .index import (
    VectorIndex,
    build_index,
    cosine,
    load_index,
    make_query,
    retrieve,
    save_index,
)

__all__ = [
    "Answer", "PhraseScopeResult", "SCENARIO_WORD_LIMIT", "ScopeGenerator",
    "VectorIndex", "build_index", "cosine", "load_index", "make_query",
    "retrieve", "save_index",
]
