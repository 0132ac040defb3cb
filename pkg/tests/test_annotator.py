"""Parsers and the per-chunk/per-policy annotation pipeline."""

import json

import pytest

from clauselens.annotator import (
    Persona,
    annotate_policy,
    classify_power,
    classify_relevance,
    extract_summary_snippets,
    identify_phrases,
    parse_power,
    parse_relevance,
    parse_summary_pairs,
)
from clauselens.config import AppConfig
from clauselens.corpus import PolicySource, chunk_policy, normalize_source
from clauselens.corpus.chunking import Chunk
from clauselens.errors import (
    EmptyResult,
    InvalidCategory,
    InvalidInput,
    UnparseableCompletion,
)
from clauselens.gateway import (
    Gateway,
    PromptExchange,
    ReplayCache,
    ScriptedProvider,
)

from .oracles import interval_union_covers

BUYER = Persona(
    persona_id="buyer",
    domain="E-commerce",
    service_descriptor="an E-commerce platform of used items",
    usage=("You typically engage with the E-commerce platform to buy new "
           "or used items from other users.",
           "You rarely post any reviews or content on the service."),
    values=("You care about information related to making purchases, "
            "refunds, returns, user protection policies, termination, "
            "arbitration, and liabilities.",
            "You also care about Privacy, particularly what data is being "
            "collected and how your data can be used and shared."),
)


def _chunk(text, chunk_id="ch1"):
    return Chunk(chunk_id=chunk_id, policy_id="p1", section_index=0,
                 text=text, char_range=(0, len(text)),
                 abs_range=(0, len(text)), sep_before="")


@pytest.fixture
def gw(tmp_path):
    cfg = AppConfig(mode="record", model_id="scripted-lm-1",
                    embed_model_id="scripted-embed-1")
    return Gateway(cfg, ReplayCache(tmp_path / "cache"), ScriptedProvider())


# --- parsers ---------------------------------------------------------------

def test_parse_summary_pairs_single_and_multiline():
    raw = ("- Short summary one {first reference text}\n"
           "- Second summary {a reference\nthat spans lines}")
    pairs = parse_summary_pairs(raw)
    assert pairs == [("Short summary one", "first reference text"),
                     ("Second summary", "a reference\nthat spans lines")]


def test_parse_summary_pairs_missing_brace_unparseable():
    with pytest.raises(UnparseableCompletion):
        parse_summary_pairs("- A summary with no reference")


def test_parse_summary_pairs_empty_is_empty_result():
    with pytest.raises(EmptyResult):
        parse_summary_pairs("The section contains nothing of note.")


def test_parse_power_accepts_fences():
    raw = '```json\n{"Category": "User", "Explanation": "why"}\n```'
    assert parse_power(raw) == ("User", "why")


def test_parse_power_invalid_category():
    with pytest.raises(InvalidCategory):
        parse_power('{"Category": "Owner", "Explanation": ""}')


def test_parse_relevance_levels():
    assert parse_relevance('{"Relevance": "High", "Explanation": "x"}')[0] == "High"
    assert parse_relevance('{"Relevance": "Low"}')[0] == "Low"


# --- extract_summary_snippets ----------------------------------------------

LICENSE_PARA = (
    "When Your Content is created with or submitted to the Service, you "
    "grant ServiceY a worldwide, royalty-free, perpetual, irrevocable, "
    "non-exclusive, transferable, and sublicensable license to use, copy, "
    "modify, adapt, prepare derivative works of, distribute, store, "
    "perform, and display Your Content.")


def test_license_chunk_single_pair(gw):
    pairs = extract_summary_snippets(gw, _chunk(LICENSE_PARA))
    assert len(pairs) == 1
    assert pairs[0].summary_text == ("You grant ServiceY broad license "
                                     "over your content")
    assert pairs[0].reference_text == LICENSE_PARA


def test_overlong_summary_truncated_after_reprompt(gw):
    arbitration = (
        "Any dispute arising from these terms will be resolved through "
        "binding individual arbitration, and you waive any right to "
        "participate in a class action lawsuit. You agree to indemnity "
        "obligations for claims arising from your use of the Service.")
    pairs = extract_summary_snippets(gw, _chunk(arbitration))
    assert len(pairs) == 1
    assert pairs[0].truncated
    assert len(pairs[0].summary_text.split()) == 12


def test_word_counts_never_exceed_limit(gw):
    text = "Some plain paragraph about accounts.\n\n" + LICENSE_PARA
    for pair in extract_summary_snippets(gw, _chunk(text)):
        assert len(pair.summary_text.split()) <= 12


def test_empty_chunk_rejected(gw):
    with pytest.raises(InvalidInput):
        extract_summary_snippets(gw, _chunk("   "))


# --- classification ----------------------------------------------------------

@pytest.mark.parametrize("snippet,expected", [
    ("The service can license user content to third parties.", "Service"),
    ("Users are responsible for the content they post", "Neutral"),
    ("You can opt out of targeted advertising", "User"),
])
def test_power_categories_from_prompt_examples(gw, snippet, expected):
    category, _ = classify_power(gw, snippet)
    assert category == expected


def test_relevance_table_pair(gw):
    high, _ = classify_relevance(
        gw, "You care about what data is being collected and how your "
            "data can be used and shared.", BUYER)
    low, _ = classify_relevance(
        gw, "Publishers of developer applications must renew their API "
            "tokens once per quarter.", BUYER)
    assert (high, low) == ("High", "Low")


def test_relevance_requires_persona_text(gw):
    with pytest.raises(InvalidInput):
        classify_relevance(gw, "", BUYER)


def test_invalid_category_rejected_after_retry(tmp_path):
    """Plant both the original and retry completions with a bad category."""
    cache = ReplayCache(tmp_path / "cache")
    cfg = AppConfig(mode="replay", model_id="scripted-lm-1")
    gw = Gateway(cfg, cache)
    for retry in (False, True):
        bindings = {"INPUT_INFORMATION_SNIPPET": "Weird clause."}
        if retry:
            bindings["_retry"] = "1"
        req = gw.build_request("classify_power", bindings)
        cache.put_completion(PromptExchange.from_request(
            req, '{"Category": "Overlord", "Explanation": ""}', "planted"))
    with pytest.raises(InvalidCategory):
        classify_power(gw, "Weird clause.")


# --- identify_phrases --------------------------------------------------------

def test_phrases_found_and_kinds_merged(gw):
    text = ("You agree to indemnity obligations. We may share certain "
            "information with third parties.")
    phrases = identify_phrases(gw, _chunk(text))
    surfaces = {p.surface_text: p.kinds for p in phrases}
    assert "indemnity" in surfaces and surfaces["indemnity"] == ("jargon",)
    assert "certain information" in surfaces
    assert "third parties" in surfaces
    for p in phrases:
        assert text[p.span[0]:p.span[1]] == p.surface_text


def test_case_mismatch_dropped(tmp_path):
    cache = ReplayCache(tmp_path / "cache")
    cfg = AppConfig(mode="replay", model_id="scripted-lm-1")
    gw = Gateway(cfg, cache)
    chunk = _chunk("The indemnity clause applies.")
    for template, payload in (("identify_jargon", {"Jargon": ["Indemnity"]}),
                              ("identify_vague", {"Vague": []})):
        req = gw.build_request(template, {"INPUT_TEXT_CHUNK": chunk.text})
        cache.put_completion(PromptExchange.from_request(
            req, json.dumps(payload), "planted"))
    assert identify_phrases(gw, chunk) == []


def test_overlapping_spans_keep_longer(tmp_path):
    cache = ReplayCache(tmp_path / "cache")
    cfg = AppConfig(mode="replay", model_id="scripted-lm-1")
    gw = Gateway(cfg, cache)
    chunk = _chunk("We may collect certain other information about you.")
    for template, payload in (
            ("identify_jargon", {"Jargon": ["other information"]}),
            ("identify_vague", {"Vague": ["certain other information"]})):
        req = gw.build_request(template, {"INPUT_TEXT_CHUNK": chunk.text})
        cache.put_completion(PromptExchange.from_request(
            req, json.dumps(payload), "planted"))
    phrases = identify_phrases(gw, chunk)
    assert [p.surface_text for p in phrases] == ["certain other information"]


def test_same_span_from_both_prompts_merges(tmp_path):
    cache = ReplayCache(tmp_path / "cache")
    cfg = AppConfig(mode="replay", model_id="scripted-lm-1")
    gw = Gateway(cfg, cache)
    chunk = _chunk("Data goes to third parties sometimes.")
    for template, payload in (
            ("identify_jargon", {"Jargon": ["third parties"]}),
            ("identify_vague", {"Vague": ["third parties"]})):
        req = gw.build_request(template, {"INPUT_TEXT_CHUNK": chunk.text})
        cache.put_completion(PromptExchange.from_request(
            req, json.dumps(payload), "planted"))
    phrases = identify_phrases(gw, chunk)
    assert len(phrases) == 1
    assert phrases[0].kinds == ("jargon", "vague")


# --- annotate_policy ----------------------------------------------------------

POLICY_TEXT = """# User Agreement

%s

All Buy Now purchases in a ServiceY Show are final and binding.

## Privacy

We collect certain information automatically using cookies.
""" % LICENSE_PARA


def _policy():
    src = PolicySource(contract_id="c1", policy_id="agreement", title="UA",
                       format="markdown", raw_text=POLICY_TEXT, order_index=0)
    return chunk_policy(normalize_source(src))


def test_annotate_policy_coverage_and_labels(gw):
    policy = _policy()
    ann = annotate_policy(gw, policy, BUYER)
    assert not ann.errors
    by_chunk = {}
    for snippet in ann.snippets:
        by_chunk.setdefault(snippet.chunk_id, []).append(snippet)
    for chunk in policy.chunks:
        spans = sorted(s.span for s in by_chunk[chunk.chunk_id])
        assert interval_union_covers(len(chunk.text), spans)
    summary_ids = [s.snippet_id for s in ann.summaries]
    assert sorted(summary_ids) == sorted(s.snippet_id for s in ann.snippets)
    assert len(set(summary_ids)) == len(summary_ids)
    labeled = ann.labeled_snippets()
    assert labeled, "expected classified snippets"
    for summary in ann.summaries:
        assert summary.word_count <= 12


def test_annotate_empty_policy(gw):
    src = PolicySource(contract_id="c1", policy_id="empty", title="E",
                       format="markdown", raw_text="# Only a heading",
                       order_index=0)
    ann = annotate_policy(gw, chunk_policy(normalize_source(src)), BUYER)
    assert ann.snippets == [] and ann.errors == []


def test_chunk_error_isolated(tmp_path):
    """First chunk's summarize completions are unparseable twice; the
    second chunk still annotates fully."""
    provider = ScriptedProvider()
    cache = ReplayCache(tmp_path / "cache")
    cfg = AppConfig(mode="record", model_id="scripted-lm-1")
    gw = Gateway(cfg, cache, provider)
    policy = _policy()
    first = policy.chunks[0]
    from clauselens.gateway import SUMMARIZE_EXAMPLE_OUTPUT
    for retry in (False, True):
        bindings = {"EXAMPLE_OUTPUT": SUMMARIZE_EXAMPLE_OUTPUT,
                    "INPUT_TEXT_CHUNK": first.text}
        if retry:
            bindings["_retry"] = "1"
        req = gw.build_request("summarize", bindings)
        cache.put_completion(PromptExchange.from_request(
            req, "- a bullet missing its closing brace {oops", "planted"))
    ann = annotate_policy(gw, policy, BUYER)
    stages = {(e.chunk_id, e.stage) for e in ann.errors}
    assert (first.chunk_id, "summarize") in stages
    whole = [s for s in ann.snippets if s.chunk_id == first.chunk_id]
    assert len(whole) == 1 and whole[0].unsummarized
    other_ids = {c.chunk_id for c in policy.chunks[1:]}
    assert any(l.snippet_id for l in ann.power_labels
               if any(s.chunk_id in other_ids and s.snippet_id == l.snippet_id
                      for s in ann.snippets))


def test_annotate_deterministic_across_workers(gw):
    policy = _policy()
    a = annotate_policy(gw, policy, BUYER, max_workers=1)
    b = annotate_policy(gw, policy, BUYER, max_workers=4)
    assert a == b
