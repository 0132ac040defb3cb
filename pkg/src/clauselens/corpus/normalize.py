"""Normalize HTML/markdown policy sources to heading-tagged plain text.

The normalized form is the coordinate system for everything downstream:
headings are ATX lines ("## Title"), blocks are newline-separated, and
inline links to sibling policies are kept as (anchor_text, policy_id)
annotations so the reading UI can attach meters to them.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

from ..errors import MalformedSource, UnknownFormat
from .manifest import PolicySource

logger = logging.getLogger(__name__)

MAX_HEADING_LEVEL = 4

_ATX_RE = re.compile(r"^(#{1,6})\s+(.*?)\s*#*\s*$")
_MD_LINK_RE = re.compile(r"\[([^\]]+)\]\(([^)\s]+)\)")


@dataclass(frozen=True)
class HeadingMark:
    """A heading line inside the normalized text; span covers the full
    line including its trailing newline (when present)."""

    level: int
    text: str
    span: tuple[int, int]


@dataclass(frozen=True)
class LinkAnnotation:
    anchor_text: str
    target_policy_id: str
    span: tuple[int, int]  # anchor text offsets in normalized text


@dataclass
class NormalizedPolicy:
    policy_id: str
    title: str
    order_index: int
    source_format: str
    text: str
    headings: list[HeadingMark] = field(default_factory=list)
    links: list[LinkAnnotation] = field(default_factory=list)

    def heading_count(self) -> int:
        return len(self.headings)


class LinkResolver:
    """Maps raw link targets (hrefs / md targets) to policy ids.

    Targets resolve when they match a policy id directly, a `policy:` URI,
    or a listed file stem. Anything else stays plain text.
    """

    def __init__(self, targets: dict[str, str] | None = None):
        self._targets = dict(targets or {})

    @classmethod
    def for_contract(cls, policies: list[PolicySource],
                     paths: dict[str, str] | None = None) -> "LinkResolver":
        targets: dict[str, str] = {}
        for p in policies:
            targets[p.policy_id] = p.policy_id
            targets[f"policy:{p.policy_id}"] = p.policy_id
        for policy_id, path in (paths or {}).items():
            targets[path] = policy_id
            stem = path.rsplit("/", 1)[-1]
            targets[stem] = policy_id
            targets[stem.rsplit(".", 1)[0]] = policy_id
        return cls(targets)

    def resolve(self, target: str) -> str | None:
        return self._targets.get(target.strip())


def normalize_source(src: PolicySource,
                     resolver: LinkResolver | None = None) -> NormalizedPolicy:
    """Produce the normalized heading-tagged plain text for one policy.

    Markdown passes through almost unchanged (heading lines recognized,
    links rewritten to anchor text). HTML block elements become
    newline-separated lines. Raises MalformedSource on empty input or
    unparseable markup.
    """
    if not src.raw_text.strip():
        raise MalformedSource(f"policy {src.policy_id}: empty raw_text")
    resolver = resolver or LinkResolver()
    if src.format == "markdown":
        text, headings, links = _normalize_markdown(src.raw_text, resolver)
    elif src.format == "html":
        text, headings, links = _normalize_html(src.raw_text, resolver)
    else:  # unreachable for PolicySource, kept for direct callers
        raise UnknownFormat(src.format)
    return NormalizedPolicy(
        policy_id=src.policy_id,
        title=src.title,
        order_index=src.order_index,
        source_format=src.format,
        text=text,
        headings=headings,
        links=links,
    )


def _normalize_markdown(raw: str, resolver: LinkResolver):
    raw = raw.replace("\r\n", "\n").replace("\r", "\n")
    out_lines: list[str] = []
    headings: list[HeadingMark] = []
    links: list[LinkAnnotation] = []
    offset = 0
    for line in raw.split("\n"):
        line = line.rstrip(" \t")
        m = _ATX_RE.match(line)
        if m and len(m.group(1)) <= MAX_HEADING_LEVEL:
            level, title = len(m.group(1)), m.group(2)
            line = "#" * level + " " + title
            headings.append(
                HeadingMark(level, title, (offset, offset + len(line) + 1))
            )
        else:
            line, line_links = _rewrite_md_links(line, offset, resolver)
            links.extend(line_links)
        out_lines.append(line)
        offset += len(line) + 1  # "\n"
    text = "\n".join(out_lines)
    # Heading spans assume a trailing newline; clamp the last one at EOF.
    headings = [
        HeadingMark(h.level, h.text, (h.span[0], min(h.span[1], len(text))))
        for h in headings
    ]
    return text, headings, links


def _rewrite_md_links(line: str, line_offset: int, resolver: LinkResolver):
    links: list[LinkAnnotation] = []
    out: list[str] = []
    pos = 0
    for m in _MD_LINK_RE.finditer(line):
        out.append(line[pos:m.start()])
        anchor, target = m.group(1), m.group(2)
        resolved = resolver.resolve(target)
        start_in_out = line_offset + sum(len(s) for s in out)
        out.append(anchor)
        if resolved is not None:
            links.append(
                LinkAnnotation(anchor, resolved,
                               (start_in_out, start_in_out + len(anchor)))
            )
        else:
            logger.warning("unresolvable link target %r kept as text", target)
        pos = m.end()
    out.append(line[pos:])
    return "".join(out), links


_BLOCK_TAGS = {"p", "div", "li", "ul", "ol", "section", "article", "table",
               "tr", "blockquote", "pre"}
_HEADING_TAGS = {"h1": 1, "h2": 2, "h3": 3, "h4": 4}
_SKIP_TAGS = {"script", "style", "head", "title"}


class _HtmlToText(HTMLParser):
    """Flatten HTML to newline-separated blocks, tracking headings/links."""

    def __init__(self, resolver: LinkResolver):
        super().__init__(convert_charrefs=True)
        self.resolver = resolver
        self.blocks: list[dict] = []  # {"kind": "body"|heading level, "parts": [...]}
        self._current: list = []
        self._heading_level: int | None = None
        self._skip_depth = 0
        self._link_target: str | None = None
        self._link_parts: list[str] | None = None
        self.saw_markup = False

    # block assembly -------------------------------------------------
    def _flush(self) -> None:
        text = _collapse_ws("".join(
            p if isinstance(p, str) else p[0] for p in self._current))
        if text:
            anchors = [p for p in self._current if not isinstance(p, str)]
            self.blocks.append({
                "level": self._heading_level,
                "text": text,
                "anchors": anchors,
            })
        self._current = []

    def handle_starttag(self, tag, attrs):
        self.saw_markup = True
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        if tag in _HEADING_TAGS:
            self._flush()
            self._heading_level = _HEADING_TAGS[tag]
        elif tag in _BLOCK_TAGS:
            self._flush()
            self._heading_level = None
        elif tag == "br":
            self._flush()
            self._heading_level = None
        elif tag == "a":
            self._link_target = dict(attrs).get("href", "")
            self._link_parts = []

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if tag in _HEADING_TAGS or tag in _BLOCK_TAGS:
            self._flush()
            self._heading_level = None
        elif tag == "a" and self._link_parts is not None:
            anchor = _collapse_ws("".join(self._link_parts))
            resolved = (self.resolver.resolve(self._link_target or "")
                        if anchor else None)
            if anchor and resolved is not None:
                self._current.append((anchor, resolved))
            elif anchor:
                logger.warning("unresolvable link target %r kept as text",
                               self._link_target)
                self._current.append(anchor)
            self._link_target = None
            self._link_parts = None

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._link_parts is not None:
            self._link_parts.append(data)
        else:
            self._current.append(data)

    def close(self):
        super().close()
        self._flush()


def _collapse_ws(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


def _normalize_html(raw: str, resolver: LinkResolver):
    parser = _HtmlToText(resolver)
    try:
        parser.feed(raw)
        parser.close()
    except Exception as exc:  # html.parser is lenient; be explicit anyway
        raise MalformedSource(f"unparseable html: {exc}") from exc
    if not parser.saw_markup and "<" not in raw:
        raise MalformedSource("declared html but contains no markup")

    lines: list[str] = []
    headings: list[HeadingMark] = []
    links: list[LinkAnnotation] = []
    offset = 0
    for block in parser.blocks:
        text = block["text"]
        if block["level"] is not None:
            line = "#" * block["level"] + " " + text
            headings.append(
                HeadingMark(block["level"], text,
                            (offset, offset + len(line) + 1))
            )
        else:
            line = text
            for anchor, policy_id in block["anchors"]:
                at = line.find(anchor)
                if at >= 0:
                    links.append(
                        LinkAnnotation(anchor, policy_id,
                                       (offset + at, offset + at + len(anchor)))
                    )
        lines.append(line)
        offset += len(line) + 1
    text = "\n".join(lines)
    headings = [
        HeadingMark(h.level, h.text, (h.span[0], min(h.span[1], len(text))))
        for h in headings
    ]
    return text, headings, links
