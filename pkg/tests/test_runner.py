"""Contract-level orchestration: indexing determinism, cache counts."""

import json
import re
from pathlib import Path

import pytest

from clauselens.annotator import Persona, load_persona
from clauselens.config import AppConfig
from clauselens.corpus import ingest_contract
from clauselens.errors import ValidationError
from clauselens.gateway import Gateway, ReplayCache, ScriptedProvider
from clauselens.runner import annotate_contract, index_contract
from clauselens.service import BundleStore

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN_CACHE = FIXTURES / "golden" / "cache"
GOLDEN_STORE = FIXTURES / "golden" / "store"


def test_embedding_cache_one_entry_per_chunk(tmp_path):
    bundle = json.loads(
        (GOLDEN_STORE / "servicey-sample.json").read_text("utf-8"))
    n_chunks = sum(len(p["chunks"]) for p in bundle["policies"])
    cache_dir = tmp_path / "cache"
    cfg = AppConfig(mode="record", cache_dir=str(cache_dir))
    gw = Gateway(cfg, ReplayCache(cache_dir), ScriptedProvider())
    index = index_contract(bundle, gw)
    assert len(index) == n_chunks
    assert len(ReplayCache(cache_dir).embedding_hashes()) == n_chunks


def test_index_rebuild_from_same_cache_byte_identical(tmp_path):
    bundle = json.loads(
        (GOLDEN_STORE / "servicey-sample.json").read_text("utf-8"))
    cfg = AppConfig(mode="strict-replay", cache_dir=str(GOLDEN_CACHE),
                    embed_model_id="scripted-embed-1")
    gw = Gateway(cfg, ReplayCache(GOLDEN_CACHE))
    store_a = BundleStore(tmp_path / "a")
    store_b = BundleStore(tmp_path / "b")
    index_contract(bundle, gw, store_a)
    index_contract(bundle, gw, store_b)
    path_a = store_a.index_path("servicey-sample")
    path_b = store_b.index_path("servicey-sample")
    assert path_a.read_bytes() == path_b.read_bytes()
    committed = GOLDEN_STORE / "servicey-sample.index.json"
    assert path_a.read_bytes() == committed.read_bytes()


def test_persona_requires_usage_and_values():
    with pytest.raises(ValidationError):
        Persona.from_dict({
            "persona_id": "p", "domain": "D", "service_descriptor": "a D",
            "usage": [], "values": ["v"],
        })
    with pytest.raises(ValidationError):
        Persona.from_dict({"persona_id": "p"})


def test_persona_rendering_matches_fixture_structure():
    persona = load_persona(FIXTURES / "personas" / "buyer.json")
    text = persona.rendered_text
    assert text.startswith("Imagine you are a lay user of E-commerce")
    assert "Your usage of E-commerce sites:" in text
    assert "Things you care about when using E-commerce sites:" in text
    assert text.count("- ") == len(persona.usage) + len(persona.values)


_MD_HEADING = re.compile(r"(?m)^(#{1,4})\s+\S")
_HTML_HEADING = re.compile(r"<h([1-4])[ >]", re.IGNORECASE)


def test_section_count_matches_independent_heading_scan():
    """Fifteen-policy contract: per policy, the section count equals the
    number of h1-h4 headings plus any preamble, counted straight from
    the source files (never through the segmentation code)."""
    contract_dir = FIXTURES / "corpus" / "servicey"
    manifest = json.loads(
        (contract_dir / "contract.manifest").read_text("utf-8"))
    assert len(manifest["policies"]) == 15
    _, policies = ingest_contract(contract_dir)
    by_id = {p.policy_id: p for p in policies}
    for entry in manifest["policies"]:
        raw = (contract_dir / entry["path"]).read_text("utf-8")
        if entry["format"] == "markdown":
            headings = len(_MD_HEADING.findall(raw))
            preamble = 0 if raw.lstrip().startswith("#") else 1
        else:
            headings = len(_HTML_HEADING.findall(raw))
            preamble = 0 if raw.lstrip().startswith("<h") else 1
        policy = by_id[entry["policy_id"]]
        assert len(policy.sections) == headings + preamble, entry["policy_id"]


def test_annotate_contract_bundle_validates(tmp_path):
    cache_dir = tmp_path / "cache"
    cfg = AppConfig(mode="record", cache_dir=str(cache_dir),
                    scripted_provider=True)
    gw = Gateway(cfg, ReplayCache(cache_dir), ScriptedProvider())
    persona = load_persona(FIXTURES / "personas" / "buyer.json")
    bundle = annotate_contract(FIXTURES / "corpus" / "servicey_sample",
                               persona, gw, max_workers=2)
    store = BundleStore(tmp_path / "store")
    content_hash = store.save(bundle)  # save() validates
    assert store.load("servicey-sample")["content_hash"] == content_hash


def test_full_contract_record_mode_integration(tmp_path):
    """Annotate the 14-policy contract offline end to end; every chunk
    must come out coverage-complete with in-limit summaries."""
    from clauselens.service.bundle import annotation_from_policy

    from .oracles import interval_union_covers

    from clauselens.runner import make_gateway

    cache_dir = tmp_path / "cache"
    cfg = AppConfig(mode="record", cache_dir=str(cache_dir),
                    scripted_provider=True)
    gw = make_gateway(cfg)
    persona = load_persona(FIXTURES / "personas" / "content_consumer.json")
    bundle = annotate_contract(FIXTURES / "corpus" / "servicex", persona, gw,
                               max_workers=4)
    assert len(bundle["policies"]) == 14
    assert sum(len(p["errors"]) for p in bundle["policies"]) == 0
    for policy in bundle["policies"]:
        ann = annotation_from_policy(policy)
        spans_by_chunk = {}
        for snippet in ann.snippets:
            spans_by_chunk.setdefault(snippet.chunk_id, []).append(
                snippet.span)
        for chunk in policy["chunks"]:
            spans = sorted(spans_by_chunk.get(chunk["chunk_id"], []))
            assert interval_union_covers(len(chunk["text"]), spans), \
                chunk["chunk_id"]
        for summary in ann.summaries:
            assert summary.word_count <= 12
    # reannotating from the same cache in strict-replay reproduces it
    cfg2 = AppConfig(mode="strict-replay", cache_dir=str(cache_dir),
                     scripted_provider=True)
    gw2 = make_gateway(cfg2)
    again = annotate_contract(FIXTURES / "corpus" / "servicex", persona, gw2,
                              max_workers=1)
    from clauselens.service.bundle import bundle_hash
    assert bundle_hash(again) == bundle_hash(bundle)
