"""The annotation bundle: canonical persisted output for one contract.

One JSON file per contract. Hashing happens over the canonical byte
form (sorted keys, compact, volatile provenance stripped), so bundles
produced on different machines from the same cache are byte-identical.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import threading
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path

from ..annotator.models import (
    InformationSnippet,
    PhraseAnnotation,
    PolicyAnnotation,
    PowerLabel,
    RelevanceLabel,
    SummarySnippet,
)
from ..annotator.persona import Persona
from ..canonical import canonical_bytes, canonical_json, content_hash
from ..corpus import ContractManifest, CorpusPolicy
from ..errors import NotFound, ValidationError
from ..gateway import template_versions
from ..meter import compute_meter

logger = logging.getLogger(__name__)

BUNDLE_SCHEMA_VERSION = 1


def build_bundle(manifest: ContractManifest,
                 policies: list[CorpusPolicy],
                 annotations: dict[str, PolicyAnnotation],
                 persona: Persona,
                 model_id: str,
                 embed_model_id: str) -> dict:
    """Assemble the bundle payload from pipeline outputs."""
    policy_payloads = []
    titles = {p.policy_id: p for p in manifest.policies}
    for policy in policies:
        src = titles[policy.policy_id]
        ann = annotations[policy.policy_id]
        meter = compute_meter(ann, weighting="count")
        policy_payloads.append({
            "policy_id": policy.policy_id,
            "title": src.title,
            "order_index": src.order_index,
            "format": src.format,
            "normalized_text": policy.normalized.text,
            "tail": policy.tail,
            "sections": [
                {"heading_path": [[lvl, txt] for lvl, txt in s.heading_path],
                 "char_range": list(s.char_range)}
                for s in policy.sections
            ],
            "chunks": [
                {"chunk_id": c.chunk_id,
                 "section_index": c.section_index,
                 "text": c.text,
                 "char_range": list(c.char_range),
                 "abs_range": list(c.abs_range),
                 "sep_before": c.sep_before,
                 "paragraph_breaks": list(c.paragraph_breaks),
                 "oversized": c.oversized}
                for c in policy.chunks
            ],
            "links": [
                {"anchor_text": l.anchor_text,
                 "target_policy_id": l.target_policy_id,
                 "span": list(l.span)}
                for l in policy.normalized.links
            ],
            "snippets": [_snippet_dict(s) for s in ann.snippets],
            "summaries": [asdict(s) for s in ann.summaries],
            "power_labels": [asdict(l) for l in ann.power_labels],
            "relevance_labels": [asdict(l) for l in ann.relevance_labels],
            "phrases": [
                {"chunk_id": p.chunk_id, "span": list(p.span),
                 "surface_text": p.surface_text, "kinds": list(p.kinds)}
                for p in ann.phrases
            ],
            "errors": [asdict(e) for e in ann.errors],
            "meter": meter.to_dict(),
        })
    bundle = {
        "schema_version": BUNDLE_SCHEMA_VERSION,
        "contract_id": manifest.contract_id,
        "title": manifest.title,
        "provenance": {
            "model_id": model_id,
            "embed_model_id": embed_model_id,
            "template_versions": template_versions(),
            "persona": persona.to_dict(),
            "created_at": datetime.now(timezone.utc).isoformat(),
        },
        "policies": policy_payloads,
        "scope_results": [],
        "ask_results": [],
    }
    validate_bundle(bundle)
    return bundle


def _snippet_dict(s: InformationSnippet) -> dict:
    return {"snippet_id": s.snippet_id, "chunk_id": s.chunk_id,
            "span": list(s.span), "text": s.text,
            "oversized_gap": s.oversized_gap,
            "unsummarized": s.unsummarized}


def annotation_from_policy(policy: dict) -> PolicyAnnotation:
    """Rebuild the in-memory annotation from a bundle policy payload,
    e.g. to recompute meters or run the eval harness."""
    ann = PolicyAnnotation(policy_id=policy["policy_id"])
    for s in policy["snippets"]:
        ann.snippets.append(InformationSnippet(
            snippet_id=s["snippet_id"], chunk_id=s["chunk_id"],
            span=tuple(s["span"]), text=s["text"],
            oversized_gap=s["oversized_gap"],
            unsummarized=s["unsummarized"]))
    for s in policy["summaries"]:
        ann.summaries.append(SummarySnippet(**s))
    for l in policy["power_labels"]:
        ann.power_labels.append(PowerLabel(**l))
    for l in policy["relevance_labels"]:
        ann.relevance_labels.append(RelevanceLabel(**l))
    for p in policy["phrases"]:
        ann.phrases.append(PhraseAnnotation(
            chunk_id=p["chunk_id"], span=tuple(p["span"]),
            surface_text=p["surface_text"], kinds=tuple(p["kinds"])))
    return ann


def validate_bundle(bundle: dict) -> None:
    """Structural validation: every cross-reference resolves."""
    for key in ("schema_version", "contract_id", "policies"):
        if key not in bundle:
            raise ValidationError(f"bundle missing key {key!r}")
    for policy in bundle["policies"]:
        chunk_ids = {c["chunk_id"] for c in policy["chunks"]}
        if len(chunk_ids) != len(policy["chunks"]):
            raise ValidationError("duplicate chunk_id in policy "
                                  + policy["policy_id"])
        snippet_ids = [s["snippet_id"] for s in policy["snippets"]]
        if len(set(snippet_ids)) != len(snippet_ids):
            raise ValidationError("duplicate snippet_id in policy "
                                  + policy["policy_id"])
        chunk_lengths = {c["chunk_id"]: len(c["text"])
                         for c in policy["chunks"]}
        spans_by_chunk: dict[str, list] = {}
        for s in policy["snippets"]:
            if s["chunk_id"] not in chunk_ids:
                raise ValidationError(
                    f"snippet {s['snippet_id']} references missing chunk "
                    f"{s['chunk_id']}")
            start, end = s["span"]
            if not (0 <= start < end <= chunk_lengths[s["chunk_id"]]):
                raise ValidationError(
                    f"snippet {s['snippet_id']} span out of chunk bounds")
            spans_by_chunk.setdefault(s["chunk_id"], []).append((start, end))
        for cid, spans in spans_by_chunk.items():
            if spans != sorted(spans):
                raise ValidationError(
                    f"snippet spans out of order in chunk {cid}")
            for (_, prev_end), (nxt_start, _) in zip(spans, spans[1:]):
                if nxt_start < prev_end:
                    raise ValidationError(
                        f"overlapping snippet spans in chunk {cid}")
        known = set(snippet_ids)
        summary_ids = [s["snippet_id"] for s in policy["summaries"]]
        if sorted(summary_ids) != sorted(snippet_ids):
            raise ValidationError(
                f"summaries and snippets disagree in policy "
                f"{policy['policy_id']}")
        for table in ("power_labels", "relevance_labels"):
            for label in policy[table]:
                if label["snippet_id"] not in known:
                    raise ValidationError(
                        f"{table} entry references missing snippet "
                        f"{label['snippet_id']}")
        for phrase in policy["phrases"]:
            if phrase["chunk_id"] not in chunk_ids:
                raise ValidationError(
                    f"phrase references missing chunk {phrase['chunk_id']}")
    all_chunks = {
        c["chunk_id"]
        for policy in bundle["policies"] for c in policy["chunks"]}
    for result in bundle.get("scope_results", []):
        if result["context_chunk_id"] not in all_chunks:
            raise ValidationError("scope result references missing chunk")
        for ref in result["definition_refs"]:
            if ref not in all_chunks:
                raise ValidationError("scope result ref outside contract")
    for result in bundle.get("ask_results", []):
        for ref in result["refs"]:
            if ref not in all_chunks:
                raise ValidationError("ask result ref outside contract")


def bundle_hash(bundle: dict) -> str:
    return content_hash(bundle)


def scope_record(chunk_id: str, span: tuple[int, int], persona_id: str,
                 result) -> dict:
    """Bundle-schema record for one persisted phrase-scope result."""
    return {
        "key": f"{chunk_id}:{span[0]}:{span[1]}:{persona_id}",
        "phrase": result.phrase,
        "context_chunk_id": chunk_id,
        "span": list(span),
        "definition": result.definition,
        "definition_refs": list(result.definition_refs),
        "scenario": result.scenario,
        "scenario_word_count": result.scenario_word_count,
        "over_length": result.over_length,
        "persona_id": result.persona_id,
    }


class BundleStore:
    """File-backed store: one canonical JSON per contract, plus vector
    indexes; lazy scope results are written behind a per-contract lock."""

    def __init__(self, store_dir: str | Path):
        self.root = Path(store_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self._write_locks: dict[str, threading.Lock] = {}
        self._master = threading.Lock()

    def _lock_for(self, contract_id: str) -> threading.Lock:
        with self._master:
            lock = self._write_locks.get(contract_id)
            if lock is None:
                lock = self._write_locks[contract_id] = threading.Lock()
            return lock

    def _path(self, contract_id: str) -> Path:
        return self.root / f"{contract_id}.json"

    def index_path(self, contract_id: str) -> Path:
        return self.root / f"{contract_id}.index.json"

    def save(self, bundle: dict) -> str:
        validate_bundle(bundle)
        h = bundle_hash(bundle)
        payload = dict(bundle)
        payload["content_hash"] = h
        path = self._path(bundle["contract_id"])
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(canonical_json(payload))
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        return h

    def load(self, contract_id: str) -> dict:
        path = self._path(contract_id)
        if not path.is_file():
            raise NotFound(f"no bundle for contract {contract_id!r}")
        bundle = json.loads(path.read_text("utf-8"))
        stored = bundle.get("content_hash")
        recomputed = bundle_hash(bundle)
        if stored != recomputed:
            raise ValidationError(
                f"bundle {contract_id} content_hash mismatch")
        return bundle

    def contract_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json")
                      if not p.name.endswith(".index.json"))

    def canonical_bytes_of(self, contract_id: str) -> bytes:
        return canonical_bytes(self.load(contract_id))

    # -- lazy scope persistence -----------------------------------------
    def upsert_scope_result(self, contract_id: str, result: dict) -> dict:
        """Insert a phrase-scope result unless its key already exists;
        returns the stored record."""
        with self._lock_for(contract_id):
            bundle = self.load(contract_id)
            for existing in bundle["scope_results"]:
                if existing["key"] == result["key"]:
                    return existing
            bundle["scope_results"].append(result)
            self.save(bundle)
            return result

    def find_scope_result(self, contract_id: str, key: str) -> dict | None:
        bundle = self.load(contract_id)
        for existing in bundle["scope_results"]:
            if existing["key"] == key:
                return existing
        return None

    def upsert_ask_result(self, contract_id: str, result: dict) -> dict:
        with self._lock_for(contract_id):
            bundle = self.load(contract_id)
            for existing in bundle["ask_results"]:
                if existing["key"] == result["key"]:
                    return existing
            bundle["ask_results"].append(result)
            self.save(bundle)
            return result

    def find_ask_result(self, contract_id: str, key: str) -> dict | None:
        bundle = self.load(contract_id)
        for existing in bundle["ask_results"]:
            if existing["key"] == key:
                return existing
        return None
