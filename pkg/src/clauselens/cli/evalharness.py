"""Fixture-driven evaluation of recorded pipeline outputs.

A fixture lists items that each reference an element of an annotation
bundle plus either a gold label (power/relevance) or human rubric flags
(definition/scenario). The harness compares the bundle's recorded
outputs against the gold and reports per-kind totals and mismatches.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..annotator.models import POWER_CATEGORIES, RELEVANCE_LEVELS
from ..errors import ValidationError

EVAL_KINDS = ("power", "relevance", "definition", "scenario")


def load_fixture(path: str | Path) -> dict:
    fixture = json.loads(Path(path).read_text("utf-8"))
    if not isinstance(fixture.get("items"), list):
        raise ValidationError("fixture must contain an 'items' list")
    for item in fixture["items"]:
        kind = item.get("kind")
        if kind not in EVAL_KINDS:
            raise ValidationError(f"unknown eval kind {kind!r}")
        if kind in ("power", "relevance"):
            for key in ("policy_id", "snippet_text", "gold"):
                if key not in item:
                    raise ValidationError(f"{kind} item missing {key!r}")
            allowed = (POWER_CATEGORIES if kind == "power"
                       else RELEVANCE_LEVELS)
            if item["gold"] not in allowed:
                raise ValidationError(
                    f"gold {item['gold']!r} not in {allowed}")
        else:
            for key in ("phrase", "rubric"):
                if key not in item:
                    raise ValidationError(f"{kind} item missing {key!r}")
            if "imperfect" not in item["rubric"]:
                raise ValidationError("rubric needs an 'imperfect' flag")
    return fixture


def _find_snippet(bundle: dict, policy_id: str, snippet_text: str) -> dict:
    wanted = snippet_text.strip()
    for policy in bundle["policies"]:
        if policy["policy_id"] != policy_id:
            continue
        for snippet in policy["snippets"]:
            if snippet["text"].strip() == wanted:
                return {"policy": policy, "snippet": snippet}
        raise ValidationError(
            f"fixture references missing snippet in {policy_id!r}: "
            f"{wanted[:60]!r}")
    raise ValidationError(f"fixture references missing policy {policy_id!r}")


def _find_scope_result(bundle: dict, phrase: str) -> dict:
    for result in bundle.get("scope_results", []):
        if result["phrase"] == phrase:
            return result
    raise ValidationError(
        f"fixture references missing scope result for phrase {phrase!r}")


def run_eval(bundle: dict, fixture: dict) -> dict:
    """Compare recorded outputs to the fixture; pure, deterministic."""
    totals = {kind: 0 for kind in EVAL_KINDS}
    mismatch_counts = {kind: 0 for kind in EVAL_KINDS}
    mismatches: list[dict] = []

    for item in fixture["items"]:
        kind = item["kind"]
        totals[kind] += 1
        if kind in ("power", "relevance"):
            found = _find_snippet(bundle, item["policy_id"],
                                  item["snippet_text"])
            policy, snippet = found["policy"], found["snippet"]
            table = ("power_labels" if kind == "power"
                     else "relevance_labels")
            value_key = "category" if kind == "power" else "level"
            label = next(
                (l for l in policy[table]
                 if l["snippet_id"] == snippet["snippet_id"]), None)
            if label is None:
                raise ValidationError(
                    f"snippet {snippet['snippet_id']} has no {kind} label")
            recorded = label[value_key]
            if recorded != item["gold"]:
                mismatch_counts[kind] += 1
                mismatches.append({
                    "kind": kind,
                    "policy_id": item["policy_id"],
                    "input": snippet["text"].strip(),
                    "recorded": recorded,
                    "gold": item["gold"],
                    "model_explanation": label["explanation"],
                    "note": item.get("note", ""),
                })
        else:
            result = _find_scope_result(bundle, item["phrase"])
            if item["rubric"]["imperfect"]:
                mismatch_counts[kind] += 1
                mismatches.append({
                    "kind": kind,
                    "phrase": item["phrase"],
                    "recorded": result["definition" if kind == "definition"
                                       else "scenario"],
                    "note": item["rubric"].get("note", ""),
                })

    return {
        "source_note": fixture.get("source_note", ""),
        "totals": totals,
        "item_count": sum(totals.values()),
        "mismatch_counts": mismatch_counts,
        "mismatch_total": len(mismatches),
        "mismatches": mismatches,
    }
