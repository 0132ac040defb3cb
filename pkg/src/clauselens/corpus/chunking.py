"""Paragraph-preserving chunking of section bodies.

Chunks accumulate whole paragraphs up to a target size and only ever
split at newline separators, so joining chunk texts with their recorded
separators reconstructs the policy text byte-for-byte. A single
paragraph longer than the hard cap is kept whole and flagged oversized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..canonical import short_hash
from .segment import Section

TARGET_CHARS = 1500
MAX_CHARS = 1800

_PARA_SEP = re.compile(r"(\n{2,})")
_LINE_SEP = re.compile(r"(\n)")


@dataclass(frozen=True)
class Chunk:
    """A contiguous run of whole paragraphs from one section.

    char_range addresses the chunk within the section body; abs_range
    within the normalized policy text. sep_before is the uncovered text
    (newlines, heading lines) between the previous chunk and this one in
    policy coordinates; it is the round-trip separator.
    """

    chunk_id: str
    policy_id: str
    section_index: int
    text: str
    char_range: tuple[int, int]
    abs_range: tuple[int, int]
    sep_before: str
    paragraph_breaks: tuple[int, ...] = ()
    oversized: bool = False


@dataclass
class ChunkedPolicy:
    policy_id: str
    chunks: list[Chunk] = field(default_factory=list)
    tail: str = ""  # text after the last chunk (or whole text if none)

    def reconstruct(self) -> str:
        return "".join(c.sep_before + c.text for c in self.chunks) + self.tail


def _pieces(body: str) -> list[tuple[str, str]]:
    """Split into (piece, separator_after) pairs; pieces are non-empty,
    separators are pure newline runs. Leading separators are attached as
    an empty-piece prefix handled by the caller."""
    parts = _PARA_SEP.split(body)
    out: list[tuple[str, str]] = []
    i = 0
    while i < len(parts):
        piece = parts[i]
        sep = parts[i + 1] if i + 1 < len(parts) else ""
        out.append((piece, sep))
        i += 2
    return out


def _subsplit(piece: str, sep_after: str, max_chars: int) -> list[tuple[str, str]]:
    """Break an over-long paragraph at single newlines; if it has none
    it stays whole (to be flagged oversized)."""
    if len(piece) <= max_chars or "\n" not in piece:
        return [(piece, sep_after)]
    parts = _LINE_SEP.split(piece)
    out: list[tuple[str, str]] = []
    i = 0
    while i < len(parts):
        line = parts[i]
        sep = parts[i + 1] if i + 1 < len(parts) else sep_after
        out.append((line, sep))
        i += 2
    return out


def chunk_section(sec: Section, section_index: int = 0,
                  target_chars: int = TARGET_CHARS,
                  max_chars: int = MAX_CHARS,
                  abs_offset: int | None = None) -> list[Chunk]:
    """Greedy accumulation of whole paragraphs up to target_chars.

    A new paragraph is appended while the running chunk is below target
    and the result stays within max_chars; otherwise the chunk closes at
    the newline separator. Separators between chunks are recorded on the
    following chunk (sep_before, in policy coordinates via abs_offset).
    """
    if target_chars > max_chars:
        raise ValueError("target_chars must be <= max_chars")
    if not sec.body_text.strip():
        return []
    abs_offset = sec.char_range[0] if abs_offset is None else abs_offset

    # Leading/trailing newline runs are separators, not chunk content.
    full = sec.body_text
    lead = len(full) - len(full.lstrip("\n"))
    body = full.rstrip("\n")[lead:]
    abs_offset += lead

    pieces: list[tuple[str, str]] = []
    for piece, sep in _pieces(body):
        pieces.extend(_subsplit(piece, sep, max_chars))

    chunks: list[Chunk] = []
    cur_start: int | None = None
    cur_text = ""
    cur_breaks: list[int] = []
    pending_sep = ""
    pos = 0  # cursor into body

    def close(end: int) -> None:
        nonlocal cur_start, cur_text, cur_breaks
        if cur_start is None or not cur_text:
            return
        oversized = len(cur_text) > max_chars
        chunks.append(Chunk(
            chunk_id=short_hash(sec.policy_id, str(abs_offset + cur_start),
                                cur_text),
            policy_id=sec.policy_id,
            section_index=section_index,
            text=cur_text,
            # positions in the original section body (lead included)
            char_range=(lead + cur_start, lead + end),
            abs_range=(abs_offset + cur_start, abs_offset + end),
            sep_before="",  # filled in below once all chunks exist
            paragraph_breaks=tuple(cur_breaks),
            oversized=oversized,
        ))
        cur_start, cur_text, cur_breaks = None, "", []

    for piece, sep in pieces:
        if not piece:
            pending_sep += sep
            pos += len(sep)
            continue
        if cur_start is None:
            cur_start = pos
            cur_text = piece
        else:
            candidate = cur_text + pending_sep + piece
            if len(cur_text) >= target_chars or len(candidate) > max_chars:
                close(pos - len(pending_sep))
                cur_start = pos
                cur_text = piece
            else:
                cur_breaks.append(len(cur_text))
                cur_text = candidate
        pos += len(piece)
        pending_sep = sep
        pos += len(sep)
        if len(cur_text) > max_chars:  # single unsplittable paragraph
            close(pos - len(pending_sep))
    close(pos - len(pending_sep) if pending_sep else pos)

    # Record separators between consecutive chunks (section-local here;
    # the policy pipeline rewrites sep_before into policy coordinates).
    out: list[Chunk] = []
    prev_end = 0
    for c in chunks:
        sep_before = sec.body_text[prev_end:c.char_range[0]]
        out.append(Chunk(
            chunk_id=c.chunk_id, policy_id=c.policy_id,
            section_index=c.section_index, text=c.text,
            char_range=c.char_range, abs_range=c.abs_range,
            sep_before=sep_before, paragraph_breaks=c.paragraph_breaks,
            oversized=c.oversized,
        ))
        prev_end = c.char_range[1]
    return out
