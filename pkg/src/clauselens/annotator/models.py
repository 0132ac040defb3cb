"""Annotation record types for one policy."""

from __future__ import annotations

from dataclasses import dataclass, field

POWER_CATEGORIES = ("Service", "Neutral", "User")
RELEVANCE_LEVELS = ("High", "Low")
PHRASE_KINDS = ("jargon", "vague")

SUMMARY_WORD_LIMIT = 12


@dataclass(frozen=True)
class InformationSnippet:
    """A contiguous span of chunk text; the unit of annotation."""

    snippet_id: str
    chunk_id: str
    span: tuple[int, int]
    text: str
    oversized_gap: bool = False  # created by coverage repair from a >=40-char gap
    unsummarized: bool = False


@dataclass(frozen=True)
class SummarySnippet:
    snippet_id: str
    summary_text: str
    word_count: int
    truncated: bool = False


@dataclass(frozen=True)
class PowerLabel:
    snippet_id: str
    category: str  # Service | Neutral | User
    explanation: str


@dataclass(frozen=True)
class RelevanceLabel:
    snippet_id: str
    level: str  # High | Low
    explanation: str


@dataclass(frozen=True)
class PhraseAnnotation:
    chunk_id: str
    span: tuple[int, int]
    surface_text: str
    kinds: tuple[str, ...]  # non-empty subset of {"jargon", "vague"}


@dataclass(frozen=True)
class ChunkError:
    chunk_id: str
    stage: str  # summarize | alignment | classify | phrases
    error: str  # exception class name
    message: str


@dataclass
class PolicyAnnotation:
    policy_id: str
    snippets: list[InformationSnippet] = field(default_factory=list)
    summaries: list[SummarySnippet] = field(default_factory=list)
    power_labels: list[PowerLabel] = field(default_factory=list)
    relevance_labels: list[RelevanceLabel] = field(default_factory=list)
    phrases: list[PhraseAnnotation] = field(default_factory=list)
    errors: list[ChunkError] = field(default_factory=list)

    def labeled_snippets(self) -> list[InformationSnippet]:
        powered = {l.snippet_id for l in self.power_labels}
        releved = {l.snippet_id for l in self.relevance_labels}
        return [s for s in self.snippets
                if s.snippet_id in powered and s.snippet_id in releved]
