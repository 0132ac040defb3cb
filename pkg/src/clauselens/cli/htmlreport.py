"""Self-contained HTML export of a bundle: meters, summaries, spans.

The report reuses the meter color tokens and the snippet layout so a
pipeline run is inspectable without the web UI. Output is deterministic
for a given bundle.
"""

from __future__ import annotations

from html import escape

from ..config import DEFAULT_COLOR_HEXES
from ..meter import BUCKET_ORDER
from ..service.bundle import annotation_from_policy

_CSS = """
body { font-family: system-ui, sans-serif; margin: 2rem; color: #222; }
h1 { font-size: 1.4rem; } h2 { font-size: 1.15rem; margin-top: 2rem; }
.meter { display: flex; height: 14px; width: 420px; border-radius: 3px;
         overflow: hidden; border: 1px solid #ccc; }
.meter div { height: 100%; }
.snippet-table { border-collapse: collapse; margin-top: .8rem; }
.snippet-table td { border: 1px solid #ddd; padding: .45rem .6rem;
                    vertical-align: top; font-size: .86rem; }
.swatch { width: 14px; min-width: 14px; }
.summary { width: 240px; }
.original { max-width: 560px; white-space: pre-wrap; }
.unsummarized { color: #888; font-style: italic; }
.phrase { text-decoration: underline; text-decoration-color: #2b6cb0;
          text-decoration-thickness: 2px; }
.legend span { display: inline-block; padding: .1rem .5rem;
               margin-right: .4rem; border-radius: 3px; font-size: .8rem; }
"""


def _meter_bar(meter: dict, hexes: dict[str, str]) -> str:
    cells = []
    for segment in meter["segments"]:
        token = f"{segment['power'].lower()}-{segment['relevance'].lower()}"
        width = segment["fraction"] * 100
        if width <= 0:
            continue
        cells.append(
            f'<div style="width:{width:.2f}%;'
            f'background:{hexes[token]}" title="{token}: '
            f'{segment["count"]}"></div>')
    return f'<div class="meter">{"".join(cells)}</div>'


def _mark_phrases(text: str, offset: int, phrases: list[dict]) -> str:
    """Escape chunk text while underlining phrase spans that fall inside
    [offset, offset + len(text))."""
    local = [(p["span"][0] - offset, p["span"][1] - offset)
             for p in phrases
             if p["span"][0] >= offset and p["span"][1] <= offset + len(text)]
    local.sort()
    out = []
    cursor = 0
    for start, end in local:
        if start < cursor:
            continue
        out.append(escape(text[cursor:start]))
        out.append(f'<span class="phrase">{escape(text[start:end])}</span>')
        cursor = end
    out.append(escape(text[cursor:]))
    return "".join(out)


def render_report(bundle: dict,
                  hexes: dict[str, str] | None = None) -> str:
    hexes = hexes or DEFAULT_COLOR_HEXES
    parts = [
        "<!doctype html>",
        '<html><head><meta charset="utf-8">',
        f"<title>{escape(bundle.get('title', bundle['contract_id']))}</title>",
        f"<style>{_CSS}</style></head><body>",
        f"<h1>{escape(bundle.get('title', bundle['contract_id']))}</h1>",
        '<p class="legend">' + "".join(
            f'<span style="background:{hexes[f"{p.lower()}-{r.lower()}"]}">'
            f"{p} / {r}</span>"
            for p, r in BUCKET_ORDER) + "</p>",
    ]
    for policy in sorted(bundle["policies"], key=lambda p: p["order_index"]):
        ann = annotation_from_policy(policy)
        powers = {l.snippet_id: l.category for l in ann.power_labels}
        relevances = {l.snippet_id: l.level for l in ann.relevance_labels}
        parts.append(f"<h2>{escape(policy['title'])}</h2>")
        parts.append(_meter_bar(policy["meter"], hexes))
        parts.append('<table class="snippet-table">')
        phrases_by_chunk: dict[str, list[dict]] = {}
        for phrase in policy["phrases"]:
            phrases_by_chunk.setdefault(phrase["chunk_id"], []).append(phrase)
        summaries = {s.snippet_id: s for s in ann.summaries}
        for snippet in ann.snippets:
            power = powers.get(snippet.snippet_id)
            relevance = relevances.get(snippet.snippet_id)
            if power and relevance:
                token = f"{power.lower()}-{relevance.lower()}"
                swatch = f'style="background:{hexes[token]}" title="{token}"'
            else:
                swatch = 'style="background:#eee" title="unlabeled"'
            summary = summaries.get(snippet.snippet_id)
            if snippet.unsummarized or summary is None:
                summary_html = '<span class="unsummarized">unsummarized</span>'
            else:
                summary_html = escape(summary.summary_text)
            original = _mark_phrases(
                snippet.text, snippet.span[0],
                phrases_by_chunk.get(snippet.chunk_id, []))
            parts.append(
                f'<tr><td class="swatch" {swatch}></td>'
                f'<td class="summary">{summary_html}</td>'
                f'<td class="original">{original}</td></tr>')
        parts.append("</table>")
    parts.append("</body></html>")
    return "\n".join(parts)
