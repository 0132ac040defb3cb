"""Policy ingestion: manifests, normalization, sectioning, chunking."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .chunking import MAX_CHARS, TARGET_CHARS, Chunk, ChunkedPolicy, chunk_section
from .manifest import ContractManifest, PolicySource, load_contract
from .normalize import (
    LinkAnnotation,
    LinkResolver,
    NormalizedPolicy,
    normalize_source,
)
from .segment import Section, segment_sections

__all__ = [
    "Chunk", "ChunkedPolicy", "ContractManifest", "CorpusPolicy",
    "LinkAnnotation", "LinkResolver", "MAX_CHARS", "NormalizedPolicy",
    "PolicySource", "Section", "TARGET_CHARS", "chunk_policy",
    "chunk_section", "load_contract", "normalize_source", "segment_sections",
]


@dataclass
class CorpusPolicy:
    """Fully ingested policy: normalized text, sections, ordered chunks."""

    normalized: NormalizedPolicy
    sections: list[Section] = field(default_factory=list)
    chunks: list[Chunk] = field(default_factory=list)
    tail: str = ""

    @property
    def policy_id(self) -> str:
        return self.normalized.policy_id

    def reconstruct(self) -> str:
        """Chunk texts joined with their recorded separators; must equal
        the normalized policy text byte-for-byte."""
        return "".join(c.sep_before + c.text for c in self.chunks) + self.tail


def chunk_policy(np: NormalizedPolicy, target_chars: int = TARGET_CHARS,
                 max_chars: int = MAX_CHARS) -> CorpusPolicy:
    """Segment and chunk one normalized policy.

    sep_before of each chunk is rewritten into policy coordinates so the
    separators also absorb heading lines and inter-section whitespace.
    """
    sections = segment_sections(np)
    chunks: list[Chunk] = []
    for idx, sec in enumerate(sections):
        chunks.extend(chunk_section(sec, section_index=idx,
                                    target_chars=target_chars,
                                    max_chars=max_chars))
    chunks.sort(key=lambda c: c.abs_range[0])
    out: list[Chunk] = []
    prev_end = 0
    for c in chunks:
        out.append(replace(c, sep_before=np.text[prev_end:c.abs_range[0]]))
        prev_end = c.abs_range[1]
    tail = np.text[prev_end:]
    return CorpusPolicy(normalized=np, sections=sections, chunks=out, tail=tail)


def ingest_contract(contract_dir) -> tuple[ContractManifest, list[CorpusPolicy]]:
    """Load, normalize, and chunk every policy of a contract directory."""
    manifest = load_contract(contract_dir)
    resolver = LinkResolver.for_contract(manifest.policies, manifest.source_paths)
    policies = [
        chunk_policy(normalize_source(src, resolver))
        for src in manifest.policies
    ]
    return manifest, policies
