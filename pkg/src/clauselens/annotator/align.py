"""Anchor model-echoed reference text back onto chunk spans, and repair
the resulting span set into a full non-overlapping cover of the chunk.

The alignment ladder: exact substring, then whitespace-collapsed match,
then longest common substring accepted only at >= 90% of the reference
length. Paraphrased references are meant to fail rather than mis-anchor.
"""

from __future__ import annotations

from difflib import SequenceMatcher

from ..canonical import short_hash
from ..errors import AlignmentFailed, InvalidInput
from .models import InformationSnippet

LCS_ACCEPT_RATIO = 0.9
GAP_MERGE_CHARS = 40


def align_reference(chunk_text: str, reference_text: str) -> tuple[int, int]:
    """Return the (start, end) span of reference_text within chunk_text.

    Leftmost match wins when the reference occurs more than once.
    Raises AlignmentFailed when even the longest common substring covers
    less than 90% of the reference.
    """
    if not reference_text:
        raise InvalidInput("empty reference text")

    # Stage 1: exact substring.
    idx = chunk_text.find(reference_text)
    if idx >= 0:
        return (idx, idx + len(reference_text))

    # Stage 2: whitespace-collapsed match mapped back to original offsets.
    c_text, c_map = _collapse(chunk_text)
    r_text, _ = _collapse(reference_text)
    if r_text:
        pos = c_text.find(r_text)
        if pos >= 0:
            start = c_map[pos]
            end = c_map[pos + len(r_text) - 1] + 1
            return (start, end)

    # Stage 3: longest common substring with acceptance threshold.
    matcher = SequenceMatcher(None, chunk_text, reference_text, autojunk=False)
    match = matcher.find_longest_match(0, len(chunk_text), 0,
                                       len(reference_text))
    if match.size >= LCS_ACCEPT_RATIO * len(reference_text) and match.size > 0:
        return (match.a, match.a + match.size)
    raise AlignmentFailed(
        f"best common substring covers {match.size}/{len(reference_text)} chars")


def _collapse(text: str) -> tuple[str, list[int]]:
    """Collapse whitespace runs to single spaces and strip the ends;
    returns the collapsed string and a map to original offsets."""
    out: list[str] = []
    mapping: list[int] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            j = i
            while j < n and text[j].isspace():
                j += 1
            if out and j < n:  # interior run -> one space
                out.append(" ")
                mapping.append(i)
            i = j
        else:
            out.append(ch)
            mapping.append(i)
            i += 1
    return "".join(out), mapping


def repair_coverage(chunk_id: str, chunk_text: str,
                    spans: list[tuple[int, int]],
                    payload_order: list[int] | None = None,
                    ) -> list[tuple[InformationSnippet, int | None]]:
    """Build the full, ordered, non-overlapping snippet cover of a chunk.

    spans must already satisfy 0 <= start < end <= len(chunk_text).
    Returns (snippet, source_index) pairs; source_index is the position
    of the originating span in the input (None for gap fillers). Total:
    never raises, even for an empty span list.
    """
    length = len(chunk_text)
    if length == 0:
        return []
    order = payload_order or list(range(len(spans)))

    indexed = sorted(
        ((s, e, i) for (s, e), i in zip(spans, order)),
        key=lambda t: (t[0], t[1]))
    # Overlap resolution: later span starts where the earlier one ended.
    resolved: list[list] = []  # [start, end, source]
    prev_end = 0
    for s, e, i in indexed:
        s = max(s, prev_end)
        if s >= e:
            continue  # fully swallowed by the previous span
        resolved.append([s, e, i])
        prev_end = e

    # Gap handling.
    tiled: list[list] = []
    cursor = 0
    for s, e, i in resolved:
        if s > cursor:
            gap_text = chunk_text[cursor:s]
            if not gap_text.strip() or len(gap_text) < GAP_MERGE_CHARS:
                if tiled:
                    tiled[-1][1] = s  # merge into preceding snippet
                else:
                    s = cursor  # chunk head: merge into the first snippet
            else:
                tiled.append([cursor, s, None])
        tiled.append([s, e, i])
        cursor = e
    if cursor < length:
        gap_text = chunk_text[cursor:]
        if not gap_text.strip() or len(gap_text) < GAP_MERGE_CHARS:
            if tiled:
                tiled[-1][1] = length
            else:
                tiled.append([0, length, None])
        else:
            tiled.append([cursor, length, None])

    out: list[tuple[InformationSnippet, int | None]] = []
    for s, e, i in tiled:
        out.append((
            InformationSnippet(
                snippet_id=short_hash(chunk_id, str(s), str(e)),
                chunk_id=chunk_id,
                span=(s, e),
                text=chunk_text[s:e],
                oversized_gap=i is None,
                unsummarized=i is None,
            ),
            i,
        ))
    return out
