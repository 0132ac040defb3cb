"""Split a normalized policy into header-delimited sections."""

from __future__ import annotations

from dataclasses import dataclass

from .normalize import NormalizedPolicy


@dataclass(frozen=True)
class Section:
    """A contiguous body region between headings.

    heading_path is the stack of enclosing headings, outermost first,
    with levels non-decreasing. char_range addresses the section body
    within the normalized policy text (heading lines excluded).
    """

    policy_id: str
    heading_path: tuple[tuple[int, str], ...]
    body_text: str
    char_range: tuple[int, int]


def segment_sections(np: NormalizedPolicy) -> list[Section]:
    """Every body character lands in exactly one section; text before the
    first heading becomes a preamble section with an empty heading path.
    An empty policy yields no sections."""
    text = np.text
    if not text:
        return []

    sections: list[Section] = []
    path: list[tuple[int, str]] = []

    # Body regions are the gaps between heading lines.
    marks = sorted(np.headings, key=lambda h: h.span[0])
    cursor = 0
    for mark in marks:
        h_start, h_end = mark.span
        if h_start > cursor:
            _append(sections, np.policy_id, tuple(path), text, cursor, h_start)
        while path and path[-1][0] >= mark.level:
            path.pop()
        path.append((mark.level, mark.text))
        cursor = h_end
    _append(sections, np.policy_id, tuple(path), text, cursor, len(text))
    return sections


def _append(sections: list[Section], policy_id: str,
            path: tuple[tuple[int, str], ...], text: str,
            start: int, end: int) -> None:
    if start >= end:
        return
    body = text[start:end]
    if not body.strip():
        # Whitespace-only region (e.g. blank line run between headings):
        # fold it into coordinates only, no content section.
        return
    sections.append(Section(policy_id, path, body, (start, end)))
