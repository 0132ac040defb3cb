"""Parsers for model completions.

The gateway hands back raw text; everything shape-related (JSON
extraction, bullet/reference pairs, enum validation) lives here so one
re-prompt can be driven by the pipeline.
"""

from __future__ import annotations

import json
import re

from ..errors import (
    EmptyResult,
    InvalidCategory,
    InvalidLevel,
    UnparseableCompletion,
)
from .models import POWER_CATEGORIES, RELEVANCE_LEVELS

_FENCE_RE = re.compile(r"^```[a-zA-Z]*\n|\n?```$", re.MULTILINE)


def extract_json_object(raw: str) -> dict:
    """Pull the first JSON object out of a completion, tolerating code
    fences and prose around it."""
    cleaned = _FENCE_RE.sub("", raw.strip())
    start = cleaned.find("{")
    end = cleaned.rfind("}")
    if start < 0 or end <= start:
        raise UnparseableCompletion("no JSON object in completion")
    try:
        data = json.loads(cleaned[start:end + 1])
    except json.JSONDecodeError as exc:
        raise UnparseableCompletion(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UnparseableCompletion("completion JSON is not an object")
    return data


def parse_summary_pairs(raw: str) -> list[tuple[str, str]]:
    """Parse the bullet format: `- summary {reference}` per item, where
    references may span lines. Raises UnparseableCompletion on malformed
    bullets and EmptyResult when no bullets are present at all."""
    text = raw.strip()
    if not text:
        raise EmptyResult("empty completion")
    starts = [m.start() for m in re.finditer(r"(?:^|\n)- ", text)]
    if not starts:
        raise EmptyResult("no bullet items in completion")
    segments = [
        text[s:e].strip() for s, e in zip(starts, starts[1:] + [len(text)])
    ]
    pairs: list[tuple[str, str]] = []
    for seg in segments:
        body = seg.lstrip("-").lstrip()
        brace = body.find("{")
        close = body.rfind("}")
        if brace < 0 or close <= brace:
            raise UnparseableCompletion(f"bullet without {{reference}}: "
                                        f"{seg[:60]!r}")
        summary = body[:brace].strip()
        reference = body[brace + 1:close]
        if not summary or not reference:
            raise UnparseableCompletion("bullet with empty summary or "
                                        "reference")
        pairs.append((summary, reference))
    return pairs


def parse_power(raw: str) -> tuple[str, str]:
    data = extract_json_object(raw)
    if "Category" not in data:
        raise UnparseableCompletion("missing 'Category' key")
    category = str(data["Category"]).strip()
    if category not in POWER_CATEGORIES:
        raise InvalidCategory(f"category {category!r} not in "
                              f"{POWER_CATEGORIES}")
    return category, str(data.get("Explanation", "")).strip()


def parse_relevance(raw: str) -> tuple[str, str]:
    data = extract_json_object(raw)
    if "Relevance" not in data:
        raise UnparseableCompletion("missing 'Relevance' key")
    level = str(data["Relevance"]).strip()
    if level not in RELEVANCE_LEVELS:
        raise InvalidLevel(f"level {level!r} not in {RELEVANCE_LEVELS}")
    return level, str(data.get("Explanation", "")).strip()


def parse_string_array(raw: str, key: str) -> list[str]:
    data = extract_json_object(raw)
    if key not in data:
        raise UnparseableCompletion(f"missing {key!r} key")
    values = data[key]
    if not isinstance(values, list) or not all(isinstance(v, str)
                                               for v in values):
        raise UnparseableCompletion(f"{key!r} is not a list of strings")
    return values


def parse_definition(raw: str) -> tuple[str, list[str]]:
    data = extract_json_object(raw)
    if "Definition" not in data:
        raise UnparseableCompletion("missing 'Definition' key")
    refs = data.get("References", [])
    if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
        raise UnparseableCompletion("'References' is not a list of strings")
    definition = str(data["Definition"]).strip()
    if not definition:
        raise UnparseableCompletion("empty definition")
    return definition, [r.strip() for r in refs]


def parse_story(raw: str) -> str:
    data = extract_json_object(raw)
    if "Story" not in data:
        raise UnparseableCompletion("missing 'Story' key")
    story = str(data["Story"]).strip()
    if not story:
        raise UnparseableCompletion("empty story")
    return story


def parse_answer(raw: str) -> tuple[str, list[str]]:
    data = extract_json_object(raw)
    if "Answer" not in data:
        raise UnparseableCompletion("missing 'Answer' key")
    refs = data.get("References", [])
    if not isinstance(refs, list) or not all(isinstance(r, str) for r in refs):
        raise UnparseableCompletion("'References' is not a list of strings")
    return str(data["Answer"]).strip(), [r.strip() for r in refs]
