"""Normalization, sectioning, and chunking behavior."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clauselens.corpus import (
    LinkResolver,
    PolicySource,
    chunk_policy,
    chunk_section,
    normalize_source,
    segment_sections,
)
from clauselens.corpus.segment import Section
from clauselens.errors import MalformedSource


def _src(text, fmt="markdown", policy_id="p1"):
    return PolicySource(
        contract_id="c1", policy_id=policy_id, title="T",
        format=fmt, raw_text=text, order_index=0,
    )


# --- normalize_source -------------------------------------------------

def test_markdown_identity_passthrough():
    np = normalize_source(_src("# A\npara"))
    assert np.text == "# A\npara"
    assert [(h.level, h.text) for h in np.headings] == [(1, "A")]


def test_html_blocks_become_newline_separated():
    np = normalize_source(_src("<h2>B</h2><p>x</p><p>y</p>", fmt="html"))
    assert [(h.level, h.text) for h in np.headings] == [(2, "B")]
    sections = segment_sections(np)
    assert len(sections) == 1
    assert sections[0].body_text == "x\ny"


def test_empty_raw_text_is_malformed():
    with pytest.raises(MalformedSource):
        normalize_source(_src("   \n  "))


def test_markdown_link_resolved_to_policy_id():
    resolver = LinkResolver({"privacy.md": "privacy"})
    np = normalize_source(
        _src("See the [Privacy Policy](privacy.md) for details."), resolver)
    assert np.text == "See the Privacy Policy for details."
    assert len(np.links) == 1
    link = np.links[0]
    assert link.target_policy_id == "privacy"
    assert np.text[link.span[0]:link.span[1]] == "Privacy Policy"


def test_unresolvable_link_kept_as_plain_text():
    np = normalize_source(_src("See [here](https://x.example) now."))
    assert np.text == "See here now."
    assert np.links == []


def test_html_link_annotation():
    resolver = LinkResolver({"/privacy": "privacy"})
    np = normalize_source(
        _src('<p>Read our <a href="/privacy">Privacy Policy</a> today.</p>',
             fmt="html"), resolver)
    assert len(np.links) == 1
    s, e = np.links[0].span
    assert np.text[s:e] == "Privacy Policy"


def test_html_heading_levels_capped_and_marked():
    np = normalize_source(
        _src("<h1>Top</h1><p>a</p><h3>Deep</h3><p>b</p>", fmt="html"))
    assert [(h.level, h.text) for h in np.headings] == [(1, "Top"), (3, "Deep")]
    for h in np.headings:
        line = np.text[h.span[0]:h.span[1]]
        assert line.rstrip("\n") == "#" * h.level + " " + h.text


def test_markdown_crlf_normalized():
    np = normalize_source(_src("# A\r\nfirst\r\n\r\nsecond"))
    assert np.text == "# A\nfirst\n\nsecond"
    cp = chunk_policy(np)
    assert cp.reconstruct() == np.text


def test_html_list_items_linearize_to_lines():
    np = normalize_source(_src(
        "<h2>Rules</h2><ul><li>no spam</li><li>no fraud</li></ul>",
        fmt="html"))
    secs = segment_sections(np)
    assert secs[0].body_text == "no spam\nno fraud"


def test_html_table_cells_preserved_as_text():
    html = ("<h2>Fees</h2><table><tr><td>Listing fee</td><td>$0.20</td></tr>"
            "<tr><td>Final value</td><td>13%</td></tr></table>")
    np = normalize_source(_src(html, fmt="html"))
    body = segment_sections(np)[0].body_text
    for cell in ("Listing fee", "$0.20", "Final value", "13%"):
        assert cell in body
    cp = chunk_policy(np)
    assert cp.reconstruct() == np.text


def test_html_script_and_style_stripped():
    np = normalize_source(_src(
        "<style>.x{color:red}</style><p>visible</p>"
        "<script>alert(1)</script>", fmt="html"))
    assert "visible" in np.text
    assert "alert" not in np.text and "color:red" not in np.text


# --- segment_sections -------------------------------------------------

def test_nested_heading_paths():
    np = normalize_source(_src("# H1\na\n## H2a\nb\n## H2b\nc"))
    secs = segment_sections(np)
    paths = [[t for _, t in s.heading_path] for s in secs]
    assert paths == [["H1"], ["H1", "H2a"], ["H1", "H2b"]]


def test_no_headings_single_preamble():
    np = normalize_source(_src("just some text\nmore text"))
    secs = segment_sections(np)
    assert len(secs) == 1
    assert secs[0].heading_path == ()
    assert secs[0].body_text == "just some text\nmore text"


def test_preamble_before_first_heading():
    np = normalize_source(_src("intro line\n# A\nbody"))
    secs = segment_sections(np)
    assert secs[0].heading_path == ()
    assert secs[0].body_text.strip() == "intro line"
    assert [t for _, t in secs[1].heading_path] == ["A"]


def test_sibling_heading_replaces_same_level():
    np = normalize_source(_src("# A\n## B\nx\n# C\ny"))
    secs = segment_sections(np)
    paths = [[t for _, t in s.heading_path] for s in secs]
    assert paths == [["A", "B"], ["C"]]


def test_every_body_char_in_exactly_one_section():
    np = normalize_source(_src("# A\naaa\n\n## B\nbbb\nccc\n# D\nddd"))
    secs = segment_sections(np)
    covered = [False] * len(np.text)
    for s in secs:
        for i in range(*s.char_range):
            assert not covered[i], "section overlap"
            covered[i] = True
    heading_chars = set()
    for h in np.headings:
        heading_chars.update(range(*h.span))
    for i, ch in enumerate(np.text):
        if not covered[i] and i not in heading_chars:
            assert ch in "\n \t", f"uncovered non-separator char {ch!r} at {i}"


# --- chunk_section ----------------------------------------------------

def _section(body):
    return Section(policy_id="p1", heading_path=(), body_text=body,
                   char_range=(0, len(body)))


def test_greedy_packing_three_paragraphs():
    paras = ["a" * 800, "b" * 800, "c" * 800]
    sec = _section("\n\n".join(paras))
    chunks = chunk_section(sec, target_chars=1500, max_chars=1800)
    assert len(chunks) == 2
    assert chunks[0].text == "a" * 800 + "\n\n" + "b" * 800
    assert chunks[1].text == "c" * 800
    assert not any(c.oversized for c in chunks)


def test_empty_section_no_chunks():
    assert chunk_section(_section("   \n ")) == []


def test_single_oversized_paragraph_kept_whole():
    sec = _section("x" * 2000)
    chunks = chunk_section(sec, target_chars=1500, max_chars=1800)
    assert len(chunks) == 1
    assert chunks[0].oversized
    assert chunks[0].text == "x" * 2000


def test_oversized_paragraph_with_lines_subsplit():
    lines = ["l" * 600] * 5  # one 3004-char paragraph of 5 lines
    sec = _section("\n".join(lines))
    chunks = chunk_section(sec, target_chars=1500, max_chars=1800)
    assert all(len(c.text) <= 1800 for c in chunks)
    assert not any(c.oversized for c in chunks)
    joined = ""
    for c in chunks:
        joined += c.sep_before + c.text
    assert joined == sec.body_text


def test_chunk_ids_deterministic():
    sec = _section("alpha\n\nbeta")
    a = chunk_section(sec)
    b = chunk_section(sec)
    assert [c.chunk_id for c in a] == [c.chunk_id for c in b]


# --- policy round trip ------------------------------------------------

WORDS = ("data", "service", "content", "user", "privacy", "account",
         "rights", "license", "information", "third", "party", "terms")


def _random_policy_text(rng, n_sections):
    parts = []
    for s in range(n_sections):
        level = rng.choice([1, 2, 2, 3])
        parts.append("#" * level + f" Heading {s}")
        for _ in range(rng.randint(1, 5)):
            n = rng.randint(5, 220)
            parts.append(" ".join(rng.choice(WORDS) for _ in range(n)) + ".")
            if rng.random() < 0.3:
                parts.append("")  # extra blank line
    return "\n\n".join(parts)


@pytest.mark.parametrize("seed", range(8))
def test_policy_round_trip_random(seed):
    rng = random.Random(seed)
    text = _random_policy_text(rng, rng.randint(1, 6))
    np = normalize_source(_src(text))
    cp = chunk_policy(np)
    assert cp.reconstruct() == np.text
    for c in cp.chunks:
        assert np.text[c.abs_range[0]:c.abs_range[1]] == c.text
        if not c.oversized:
            assert len(c.text) <= 1800


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=2200), min_size=0,
                max_size=12))
def test_round_trip_any_paragraph_sizes(sizes):
    body = "\n\n".join("p" * n for n in sizes)
    if not body:
        return
    np = normalize_source(_src(body))
    cp = chunk_policy(np)
    assert cp.reconstruct() == np.text
    for c in cp.chunks:
        if not c.oversized:
            assert len(c.text) <= 1800
