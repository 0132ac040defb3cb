"""Brute-force cosine vector index over contract chunks.

The corpus is tens-to-hundreds of chunks, so a full scan is exact and
fast. Entries are immutable after build; ranking ties break by ascending
chunk_id so results are reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch, EmptyIndex, InvalidInput, ValidationError

INDEX_SCHEMA_VERSION = 1


def cosine(u, v) -> float:
    """dot(u, v) / (|u||v|); 0.0 when either norm is zero."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimensionMismatch(f"{u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


@dataclass(frozen=True)
class VectorIndex:
    chunk_ids: tuple[str, ...]
    matrix: np.ndarray  # shape (n, d), row i belongs to chunk_ids[i]

    def __post_init__(self) -> None:
        if len(set(self.chunk_ids)) != len(self.chunk_ids):
            raise ValidationError("duplicate chunk_id in index")
        if self.matrix.ndim != 2 or self.matrix.shape[0] != len(self.chunk_ids):
            raise ValidationError("matrix rows must match chunk_ids")
        if not np.all(np.isfinite(self.matrix)):
            raise InvalidInput("index contains non-finite vectors")
        self.matrix.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return len(self.chunk_ids)

    def vector_for(self, chunk_id: str) -> np.ndarray:
        try:
            return self.matrix[self.chunk_ids.index(chunk_id)]
        except ValueError:
            raise KeyError(chunk_id) from None


def build_index(entries: list[tuple[str, list[float]]]) -> VectorIndex:
    """One entry per chunk, uniform dimension, caller-provided order is
    normalized to ascending chunk_id for stable serialization."""
    if not entries:
        raise EmptyIndex("cannot build an index with no entries")
    ids = [cid for cid, _ in entries]
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate chunk_id input")
    dims = {len(vec) for _, vec in entries}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    ordered = sorted(entries, key=lambda e: e[0])
    matrix = np.array([vec for _, vec in ordered], dtype=np.float64)
    return VectorIndex(tuple(cid for cid, _ in ordered), matrix)


def retrieve(index: VectorIndex, query_vector, k: int = 15,
             ) -> list[tuple[str, float]]:
    """Top-k chunks by descending cosine similarity to the query,
    ties broken by ascending chunk_id; returns min(k, n) results."""
    if len(index) == 0:
        raise EmptyIndex("retrieve on empty index")
    q = np.asarray(query_vector, dtype=np.float64)
    if q.shape != (index.dimension,):
        raise DimensionMismatch(f"query {q.shape} vs index dim "
                                f"{index.dimension}")
    scores = [cosine(row, q) for row in index.matrix]
    ranked = sorted(zip(index.chunk_ids, scores), key=lambda t: (-t[1], t[0]))
    return ranked[:max(0, k)]


def make_query(phrase: str, context: str) -> str:
    """Retrieval query for phrase definitions."""
    return f"What does {phrase} refer to in the sentence: {context}"


def save_index(index: VectorIndex, path: str | Path) -> None:
    payload = {
        "schema_version": INDEX_SCHEMA_VERSION,
        "dimension": index.dimension,
        "count": len(index),
        "entries": [
            {"chunk_id": cid, "vector": [float(x) for x in row]}
            for cid, row in zip(index.chunk_ids, index.matrix)
        ],
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True,
                                     separators=(",", ":")), "utf-8")


def load_index(path: str | Path) -> VectorIndex:
    payload = json.loads(Path(path).read_text("utf-8"))
    if payload.get("schema_version") != INDEX_SCHEMA_VERSION:
        raise ValidationError("unsupported index schema version")
    entries = [(e["chunk_id"], e["vector"]) for e in payload["entries"]]
    index = build_index(entries)
    if len(index) != payload["count"] or index.dimension != payload["dimension"]:
        raise ValidationError("index header does not match entries")
    return index
