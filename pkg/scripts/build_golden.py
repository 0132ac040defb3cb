#!/usr/bin/env python3
"""Build the golden replay fixtures for the sample contract.

Records the full exchange cache with the scripted provider, freezes the
annotation bundle + vector index, then replays a fixed request suite
against the HTTP API in strict-replay mode and stores the responses as
byte-exact goldens.

Re-running regenerates identical bytes (provenance timestamp pinned).

Usage: python3 scripts/build_golden.py
"""

from __future__ import annotations

import json
import shutil
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from clauselens.annotator import load_persona  # noqa: E402
from clauselens.config import AppConfig  # noqa: E402
from clauselens.runner import annotate_contract, index_contract, make_gateway  # noqa: E402
from clauselens.service import BundleStore, EventLog, ServiceState, create_app  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = FIXTURES / "golden"
CONTRACT_DIR = FIXTURES / "corpus" / "servicey_sample"
PERSONA = FIXTURES / "personas" / "buyer.json"
PINNED_CREATED_AT = "2025-01-01T00:00:00+00:00"


def _find_chunk(bundle: dict, needle: str) -> tuple[str, dict]:
    for policy in bundle["policies"]:
        for chunk in policy["chunks"]:
            if needle in chunk["text"]:
                return policy["policy_id"], chunk
    raise SystemExit(f"no chunk contains {needle!r}")


def build_bundle_and_cache() -> dict:
    cache_dir = GOLDEN / "cache"
    store_dir = GOLDEN / "store"
    for stale in (cache_dir, store_dir):
        if stale.exists():
            shutil.rmtree(stale)
    cfg = AppConfig(mode="record", cache_dir=str(cache_dir),
                    scripted_provider=True, retrieval_k=15)
    gateway = make_gateway(cfg)
    persona = load_persona(PERSONA)
    bundle = annotate_contract(CONTRACT_DIR, persona, gateway)
    bundle["provenance"]["created_at"] = PINNED_CREATED_AT
    store = BundleStore(store_dir)
    content_hash = store.save(bundle)
    index_contract(bundle, gateway, store)
    print(f"bundle {bundle['contract_id']}: content_hash={content_hash}")
    n_policies = len(bundle["policies"])
    n_chunks = sum(len(p["chunks"]) for p in bundle["policies"])
    n_snips = sum(len(p["snippets"]) for p in bundle["policies"])
    print(f"  {n_policies} policies, {n_chunks} chunks, {n_snips} snippets")
    errs = [e for p in bundle["policies"] for e in p["errors"]]
    if errs:
        raise SystemExit(f"golden bundle has chunk errors: {errs}")
    return bundle


def request_suite(bundle: dict) -> list[dict]:
    ua_policy, license_chunk = _find_chunk(bundle, "royalty-free")
    pp_policy, privacy_chunk = _find_chunk(bundle, "certain other information")
    _, deletion_chunk = _find_chunk(bundle, "request deletion")
    _, credit_chunk = _find_chunk(bundle, "ServiceY Credit")
    span_phrase = "certain other information"
    start = privacy_chunk["text"].find(span_phrase)
    span = [start, start + len(span_phrase)]

    def event(seq, kind, payload):
        return {"session_id": "golden-session", "seq": seq,
                "timestamp": seq * 1000, "kind": kind, "payload": payload}

    return [
        {"name": "01_healthz", "method": "GET", "path": "/healthz",
         "status": 200},
        {"name": "02_contracts", "method": "GET", "path": "/contracts",
         "status": 200},
        {"name": "03_contract_policies", "method": "GET",
         "path": "/contracts/servicey-sample/policies", "status": 200},
        {"name": "04_policy_user_agreement", "method": "GET",
         "path": f"/policies/{ua_policy}", "status": 200},
        {"name": "05_policy_privacy", "method": "GET",
         "path": f"/policies/{pp_policy}", "status": 200},
        {"name": "06_meter_count", "method": "GET",
         "path": f"/policies/{ua_policy}/meter?weighting=count",
         "status": 200},
        {"name": "07_meter_char_length", "method": "GET",
         "path": f"/policies/{ua_policy}/meter?weighting=char_length",
         "status": 200},
        {"name": "08_scope_phrase_text", "method": "POST",
         "path": "/phrases/scope",
         "json": {"policy_id": ua_policy,
                  "chunk_id": license_chunk["chunk_id"],
                  "phrase_text": "royalty-free"},
         "status": 200},
        {"name": "09_scope_span", "method": "POST", "path": "/phrases/scope",
         "json": {"policy_id": pp_policy,
                  "chunk_id": privacy_chunk["chunk_id"], "span": span},
         "status": 200},
        {"name": "10_scope_user_highlight", "method": "POST",
         "path": "/phrases/scope",
         "json": {"policy_id": ua_policy,
                  "chunk_id": credit_chunk["chunk_id"],
                  "phrase_text": "ServiceY Credit"},
         "status": 200},
        {"name": "11_ask_deletion", "method": "POST", "path": "/phrases/ask",
         "json": {"policy_id": pp_policy,
                  "chunk_id": deletion_chunk["chunk_id"],
                  "phrase": "personal data",
                  "question": "Can I delete my data?"},
         "status": 200},
        {"name": "12_events_batch", "method": "POST", "path": "/events",
         "json": {"events": [
             event(1, "navigate_policy", {"policy_id": ua_policy}),
             event(2, "click_summary_snippet",
                   {"policy_id": ua_policy, "snippet_id": "s-golden"}),
             event(3, "scroll", {"policy_id": ua_policy, "panel": "text",
                                 "offset": 420}),
         ]},
         "status": 200},
        {"name": "13_unknown_contract", "method": "GET",
         "path": "/contracts/unknown/policies", "status": 404},
        {"name": "14_unknown_policy", "method": "GET",
         "path": "/policies/unknown", "status": 404},
        {"name": "15_bad_weighting", "method": "GET",
         "path": f"/policies/{ua_policy}/meter?weighting=bogus",
         "status": 400},
        {"name": "16_scope_span_out_of_range", "method": "POST",
         "path": "/phrases/scope",
         "json": {"policy_id": pp_policy,
                  "chunk_id": privacy_chunk["chunk_id"],
                  "span": [0, len(privacy_chunk["text"]) + 50]},
         "status": 409},
        {"name": "17_events_seq_regression", "method": "POST",
         "path": "/events",
         "json": {"events": [
             event(10, "navigate_policy", {"policy_id": ua_policy}),
             event(9, "navigate_policy", {"policy_id": ua_policy}),
         ]},
         "status": 400},
        {"name": "18_scope_phrase_not_found", "method": "POST",
         "path": "/phrases/scope",
         "json": {"policy_id": ua_policy,
                  "chunk_id": license_chunk["chunk_id"],
                  "phrase_text": "definitely not in the chunk"},
         "status": 409},
    ]


def run_suite(requests: list[dict], mode: str, record_bodies: bool) -> None:
    """Replay the suite against a fresh app; optionally write goldens."""
    api_dir = GOLDEN / "api"
    tmp = Path(tempfile.mkdtemp(prefix="golden-api-"))
    store_copy = tmp / "store"
    shutil.copytree(GOLDEN / "store", store_copy)
    cfg = AppConfig(mode=mode, cache_dir=str(GOLDEN / "cache"),
                    store_dir=str(store_copy), scripted_provider=True,
                    retrieval_k=15)
    gateway = make_gateway(cfg)
    state = ServiceState(BundleStore(store_copy),
                         EventLog(tmp / "events"), gateway,
                         retrieval_k=cfg.retrieval_k)
    client = TestClient(create_app(state), raise_server_exceptions=False)
    if record_bodies:
        if api_dir.exists():
            shutil.rmtree(api_dir)
        api_dir.mkdir(parents=True)
    for req in requests:
        if req["method"] == "GET":
            resp = client.get(req["path"])
        else:
            resp = client.post(req["path"], json=req["json"])
        if resp.status_code != req["status"]:
            raise SystemExit(f"{req['name']}: expected {req['status']}, "
                             f"got {resp.status_code}: {resp.text[:200]}")
        if record_bodies:
            (api_dir / f"{req['name']}.body").write_bytes(resp.content)
        print(f"  {req['name']}: {resp.status_code} "
              f"({len(resp.content)} bytes)")
    shutil.rmtree(tmp)


def pin_cache_timestamps() -> None:
    """Exchange timestamps are irrelevant to hashing; pin them so that
    regenerating the fixtures is byte-stable."""
    for path in sorted((GOLDEN / "cache").rglob("*.json")):
        data = json.loads(path.read_text("utf-8"))
        if data.get("timestamp") != PINNED_CREATED_AT:
            data["timestamp"] = PINNED_CREATED_AT
            path.write_text(json.dumps(
                data, sort_keys=True, separators=(",", ":"),
                ensure_ascii=False), "utf-8")


def main() -> None:
    bundle = build_bundle_and_cache()
    requests = request_suite(bundle)
    print("recording generation exchanges (record mode):")
    run_suite(requests, mode="record", record_bodies=False)
    pin_cache_timestamps()
    print("freezing golden responses (strict-replay):")
    run_suite(requests, mode="strict-replay", record_bodies=True)
    (GOLDEN / "api" / "requests.json").write_text(
        json.dumps(requests, indent=2) + "\n", "utf-8")
    n_completions = len(list((GOLDEN / "cache" / "completions").glob("*.json")))
    n_embeddings = len(list((GOLDEN / "cache" / "embeddings").glob("*.json")))
    print(f"cache: {n_completions} completions, {n_embeddings} embeddings")


if __name__ == "__main__":
    main()
