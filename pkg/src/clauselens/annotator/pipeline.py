"""Per-chunk annotation pipeline and the policy-level driver."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..corpus import Chunk, CorpusPolicy
from ..errors import (
    AlignmentFailed,
    EmptyResult,
    InvalidCategory,
    InvalidInput,
    InvalidLevel,
    ProviderError,
    ReplayMiss,
    UnparseableCompletion,
)
from ..gateway import SUMMARIZE_EXAMPLE_OUTPUT, Gateway
from .align import align_reference, repair_coverage
from .models import (
    SUMMARY_WORD_LIMIT,
    ChunkError,
    PhraseAnnotation,
    PolicyAnnotation,
    PowerLabel,
    RelevanceLabel,
    SummarySnippet,
)
from .parse import (
    parse_power,
    parse_relevance,
    parse_string_array,
    parse_summary_pairs,
)
from .persona import Persona

logger = logging.getLogger(__name__)

_RETRYABLE = (UnparseableCompletion, InvalidCategory, InvalidLevel)


@dataclass(frozen=True)
class SummaryPair:
    summary_text: str
    reference_text: str
    truncated: bool = False


def _run_with_retry(gw: Gateway, template_id: str, bindings: dict, parser):
    """Parse a completion, allowing exactly one re-prompt on failure.

    In replay modes the retry exchange may be absent from the cache; the
    original parse error is re-raised then, not the miss.
    """
    raw = gw.run(template_id, bindings)
    try:
        return parser(raw)
    except _RETRYABLE as first_error:
        try:
            raw = gw.run(template_id, {**bindings, "_retry": "1"})
        except ReplayMiss:
            raise first_error from None
        return parser(raw)


def _truncate_words(text: str, limit: int) -> str:
    return " ".join(text.split()[:limit])


def extract_summary_snippets(gw: Gateway, chunk: Chunk) -> list[SummaryPair]:
    """Summarize one chunk into (summary, reference) pairs.

    Summaries longer than the 12-word limit trigger one re-prompt; any
    survivors are truncated and flagged. Raises EmptyResult when the
    model produced no pairs, UnparseableCompletion after a failed retry.
    """
    if not chunk.text.strip():
        raise InvalidInput("empty chunk text")
    bindings = {"EXAMPLE_OUTPUT": SUMMARIZE_EXAMPLE_OUTPUT,
                "INPUT_TEXT_CHUNK": chunk.text}
    retried = False

    raw = gw.run("summarize", bindings)
    try:
        pairs = parse_summary_pairs(raw)
    except UnparseableCompletion as first_error:
        retried = True
        try:
            raw = gw.run("summarize", {**bindings, "_retry": "1"})
        except ReplayMiss:
            raise first_error from None
        pairs = parse_summary_pairs(raw)

    if (not retried
            and any(len(s.split()) > SUMMARY_WORD_LIMIT for s, _ in pairs)):
        try:
            raw = gw.run("summarize", {**bindings, "_retry": "1"})
            pairs = parse_summary_pairs(raw)
        except (ReplayMiss, UnparseableCompletion, EmptyResult):
            pass  # keep the first parse; truncation below still applies

    out: list[SummaryPair] = []
    for summary, reference in pairs:
        words = summary.split()
        if len(words) > SUMMARY_WORD_LIMIT:
            out.append(SummaryPair(_truncate_words(summary, SUMMARY_WORD_LIMIT),
                                   reference, truncated=True))
        else:
            out.append(SummaryPair(summary, reference))
    return out


def classify_power(gw: Gateway, snippet_text: str) -> tuple[str, str]:
    if not snippet_text.strip():
        raise InvalidInput("empty snippet text")
    return _run_with_retry(
        gw, "classify_power",
        {"INPUT_INFORMATION_SNIPPET": snippet_text}, parse_power)


def classify_relevance(gw: Gateway, snippet_text: str,
                       persona: Persona) -> tuple[str, str]:
    if not snippet_text.strip():
        raise InvalidInput("empty snippet text")
    if not persona.rendered_text.strip():
        raise InvalidInput("persona renders to empty text")
    return _run_with_retry(
        gw, "classify_relevance",
        {"INPUT_USER_PERSONA": persona.rendered_text,
         "INPUT_INFORMATION_SNIPPET": snippet_text}, parse_relevance)


def identify_phrases(gw: Gateway, chunk: Chunk) -> list[PhraseAnnotation]:
    """Union of the jargon and vague identification prompts.

    Returned strings must occur in the chunk verbatim (case-sensitive);
    non-matching ones are dropped with a warning. Equal spans merge
    kinds; overlapping distinct spans keep the longer one.
    """
    if not chunk.text.strip():
        raise InvalidInput("empty chunk text")
    bindings = {"INPUT_TEXT_CHUNK": chunk.text}
    jargon = _run_with_retry(gw, "identify_jargon", bindings,
                             lambda raw: parse_string_array(raw, "Jargon"))
    vague = _run_with_retry(gw, "identify_vague", bindings,
                            lambda raw: parse_string_array(raw, "Vague"))

    by_span: dict[tuple[int, int], set[str]] = {}
    for terms, kind in ((jargon, "jargon"), (vague, "vague")):
        for term in terms:
            spans = _find_all(chunk.text, term)
            if not spans:
                logger.warning(
                    "chunk %s: phrase %r not found verbatim, dropped",
                    chunk.chunk_id, term)
                continue
            for span in spans:
                by_span.setdefault(span, set()).add(kind)

    # Longer spans win overlaps; equal spans already merged their kinds.
    candidates = sorted(
        by_span.items(),
        key=lambda kv: (-(kv[0][1] - kv[0][0]), kv[0][0]))
    kept: list[tuple[tuple[int, int], set[str]]] = []
    for span, kinds in candidates:
        if any(span[0] < e and s < span[1] for (s, e), _ in kept):
            continue
        kept.append((span, kinds))
    kept.sort(key=lambda kv: kv[0])
    return [
        PhraseAnnotation(
            chunk_id=chunk.chunk_id,
            span=span,
            surface_text=chunk.text[span[0]:span[1]],
            kinds=tuple(sorted(kinds)),
        )
        for span, kinds in kept
    ]


def _find_all(text: str, needle: str) -> list[tuple[int, int]]:
    if not needle:
        return []
    spans = []
    start = 0
    while True:
        idx = text.find(needle, start)
        if idx < 0:
            break
        spans.append((idx, idx + len(needle)))
        start = idx + len(needle)
    return spans


def annotate_chunk(gw: Gateway, chunk: Chunk,
                   persona: Persona) -> PolicyAnnotation:
    """Annotate one chunk; failures are recorded, never raised, except
    ReplayMiss under strict-replay (a determinism violation upstream)."""
    part = PolicyAnnotation(policy_id=chunk.policy_id)
    strict = gw.mode == "strict-replay"

    def record(stage: str, exc: Exception) -> None:
        if strict and isinstance(exc, ReplayMiss):
            raise exc
        part.errors.append(ChunkError(chunk.chunk_id, stage,
                                      type(exc).__name__, str(exc)))

    pairs: list[SummaryPair] = []
    try:
        pairs = extract_summary_snippets(gw, chunk)
    except EmptyResult:
        pass  # chunk marked unsummarized below
    except (UnparseableCompletion, ReplayMiss, ProviderError) as exc:
        record("summarize", exc)

    aligned_spans: list[tuple[int, int]] = []
    aligned_pairs: list[SummaryPair] = []
    for pair in pairs:
        try:
            aligned_spans.append(align_reference(chunk.text,
                                                 pair.reference_text))
            aligned_pairs.append(pair)
        except AlignmentFailed as exc:
            record("alignment", exc)

    covered = repair_coverage(chunk.chunk_id, chunk.text, aligned_spans)
    for snippet, source in covered:
        part.snippets.append(snippet)
        if source is None:
            part.summaries.append(SummarySnippet(snippet.snippet_id, "", 0))
            continue
        pair = aligned_pairs[source]
        part.summaries.append(SummarySnippet(
            snippet_id=snippet.snippet_id,
            summary_text=pair.summary_text,
            word_count=len(pair.summary_text.split()),
            truncated=pair.truncated,
        ))
        try:
            category, why = classify_power(gw, snippet.text)
            part.power_labels.append(
                PowerLabel(snippet.snippet_id, category, why))
            level, why = classify_relevance(gw, snippet.text, persona)
            part.relevance_labels.append(
                RelevanceLabel(snippet.snippet_id, level, why))
        except (UnparseableCompletion, InvalidCategory, InvalidLevel,
                ReplayMiss, ProviderError) as exc:
            record("classify", exc)

    try:
        part.phrases.extend(identify_phrases(gw, chunk))
    except (UnparseableCompletion, ReplayMiss, ProviderError) as exc:
        record("phrases", exc)
    return part


def annotate_policy(gw: Gateway, policy: CorpusPolicy, persona: Persona,
                    max_workers: int = 1) -> PolicyAnnotation:
    """Annotate every chunk of a policy; chunk failures stay isolated.

    Chunk tasks are independent; results merge in chunk order, so the
    output is identical whatever the worker count.
    """
    annotation = PolicyAnnotation(policy_id=policy.policy_id)
    chunks = policy.chunks
    if not chunks:
        return annotation
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            parts = list(pool.map(
                lambda c: annotate_chunk(gw, c, persona), chunks))
    else:
        parts = [annotate_chunk(gw, c, persona) for c in chunks]
    for part in parts:
        annotation.snippets.extend(part.snippets)
        annotation.summaries.extend(part.summaries)
        annotation.power_labels.extend(part.power_labels)
        annotation.relevance_labels.extend(part.relevance_labels)
        annotation.phrases.extend(part.phrases)
        annotation.errors.extend(part.errors)
    return annotation
