"""Per-policy power meters and the six-token color mapping.

The meter is the distribution of labeled snippets over the six
(power x relevance) buckets; unsummarized snippets never count.
Segment order is fixed so serialized meters render deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .annotator.models import (
    POWER_CATEGORIES,
    RELEVANCE_LEVELS,
    PolicyAnnotation,
    SummarySnippet,
)
from .config import DEFAULT_COLOR_HEXES

BUCKET_ORDER: tuple[tuple[str, str], ...] = tuple(
    (power, relevance)
    for power in POWER_CATEGORIES
    for relevance in RELEVANCE_LEVELS
)

WEIGHTINGS = ("count", "char_length")


@dataclass(frozen=True)
class ColorToken:
    power: str
    relevance: str
    token: str
    hex: str


def color_for(power: str, relevance: str,
              hexes: dict[str, str] | None = None) -> ColorToken:
    """Service -> red hue, Neutral -> yellow, User -> green; High is the
    saturated variant, Low the desaturated one. Total over the enums."""
    if power not in POWER_CATEGORIES:
        raise ValueError(f"power {power!r} not in {POWER_CATEGORIES}")
    if relevance not in RELEVANCE_LEVELS:
        raise ValueError(f"relevance {relevance!r} not in {RELEVANCE_LEVELS}")
    token = f"{power.lower()}-{relevance.lower()}"
    hexes = hexes or DEFAULT_COLOR_HEXES
    return ColorToken(power=power, relevance=relevance, token=token,
                      hex=hexes[token])


@dataclass
class PowerMeter:
    policy_id: str
    weighting: str
    total: int
    buckets: dict[str, dict] = field(default_factory=dict)
    # buckets[token] = {"power", "relevance", "count", "fraction"}

    def fraction_sum(self) -> float:
        return sum(b["fraction"] for b in self.buckets.values())

    def to_dict(self) -> dict:
        return {
            "policy_id": self.policy_id,
            "weighting": self.weighting,
            "total": self.total,
            "segments": [
                self.buckets[f"{p.lower()}-{r.lower()}"]
                for p, r in BUCKET_ORDER
            ],
        }


def compute_meter(annotation: PolicyAnnotation,
                  weighting: str = "count") -> PowerMeter:
    """Bucket counts plus fractions; char_length mode weights each
    snippet by its text length instead of counting it once."""
    if weighting not in WEIGHTINGS:
        raise ValueError(f"weighting must be one of {WEIGHTINGS}")
    power_by_id = {l.snippet_id: l.category for l in annotation.power_labels}
    relevance_by_id = {l.snippet_id: l.level
                       for l in annotation.relevance_labels}

    counts: dict[tuple[str, str], int] = {b: 0 for b in BUCKET_ORDER}
    weights: dict[tuple[str, str], float] = {b: 0.0 for b in BUCKET_ORDER}
    total = 0
    for snippet in annotation.snippets:
        if snippet.unsummarized:
            continue
        power = power_by_id.get(snippet.snippet_id)
        relevance = relevance_by_id.get(snippet.snippet_id)
        if power is None or relevance is None:
            continue
        key = (power, relevance)
        counts[key] += 1
        weights[key] += len(snippet.text)
        total += 1

    denom = (sum(weights.values()) if weighting == "char_length"
             else float(total))
    meter = PowerMeter(policy_id=annotation.policy_id, weighting=weighting,
                       total=total)
    for power, relevance in BUCKET_ORDER:
        token = f"{power.lower()}-{relevance.lower()}"
        numer = (weights[(power, relevance)] if weighting == "char_length"
                 else float(counts[(power, relevance)]))
        meter.buckets[token] = {
            "power": power,
            "relevance": relevance,
            "count": counts[(power, relevance)],
            "fraction": (numer / denom) if denom else 0.0,
        }
    return meter


def meter_preview(annotation: PolicyAnnotation,
                  limit: int | None = None) -> list[dict]:
    """Summary snippets in document order, each carrying its snippet_id
    so the preview can link back to the referenced span."""
    summaries: dict[str, SummarySnippet] = {
        s.snippet_id: s for s in annotation.summaries}
    power_by_id = {l.snippet_id: l.category for l in annotation.power_labels}
    relevance_by_id = {l.snippet_id: l.level
                       for l in annotation.relevance_labels}
    out: list[dict] = []
    for snippet in annotation.snippets:  # snippets are in document order
        if snippet.unsummarized:
            continue
        summary = summaries.get(snippet.snippet_id)
        if summary is None:
            continue
        power = power_by_id.get(snippet.snippet_id)
        relevance = relevance_by_id.get(snippet.snippet_id)
        entry = {
            "snippet_id": snippet.snippet_id,
            "chunk_id": snippet.chunk_id,
            "summary_text": summary.summary_text,
        }
        if power and relevance:
            entry["color"] = color_for(power, relevance).token
        out.append(entry)
        if limit is not None and len(out) >= limit:
            break
    return out
