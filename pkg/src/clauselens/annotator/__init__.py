"""Span-aligned snippets, power/relevance labels, phrase identification."""

from .align import GAP_MERGE_CHARS, LCS_ACCEPT_RATIO, align_reference, repair_coverage
from .models import (
    PHRASE_KINDS,
    POWER_CATEGORIES,
    RELEVANCE_LEVELS,
    SUMMARY_WORD_LIMIT,
    ChunkError,
    InformationSnippet,
    PhraseAnnotation,
    PolicyAnnotation,
    PowerLabel,
    RelevanceLabel,
    SummarySnippet,
)
from .parse import (
    extract_json_object,
    parse_answer,
    parse_definition,
    parse_power,
    parse_relevance,
    parse_story,
    parse_string_array,
    parse_summary_pairs,
)
from .persona import Persona, load_persona
from .pipeline import (
    SummaryPair,
    annotate_chunk,
    annotate_policy,
    classify_power,
    classify_relevance,
    extract_summary_snippets,
    identify_phrases,
)

__all__ = [
    "ChunkError", "GAP_MERGE_CHARS", "InformationSnippet",
    "LCS_ACCEPT_RATIO", "PHRASE_KINDS", "POWER_CATEGORIES", "Persona",
    "PhraseAnnotation", "PolicyAnnotation", "PowerLabel", "RELEVANCE_LEVELS",
    "RelevanceLabel", "SUMMARY_WORD_LIMIT", "SummaryPair", "SummarySnippet",
    "align_reference", "annotate_chunk", "annotate_policy", "classify_power",
    "classify_relevance", "extract_json_object", "extract_summary_snippets",
    "identify_phrases", "load_persona", "parse_answer", "parse_definition",
    "parse_power", "parse_relevance", "parse_story", "parse_string_array",
    "parse_summary_pairs", "repair_coverage",
]
