"""Canonical JSON serialization and content hashing.

Every persisted artifact (bundles, cache entries, indexes) is hashed over
its canonical form: UTF-8, sorted keys, compact separators, no NaN/Inf.
Fields listed in VOLATILE_FIELDS (wall-clock provenance) are stripped
before hashing so that re-runs under replay produce identical hashes.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

VOLATILE_FIELDS = frozenset({"created_at", "content_hash"})


def _strip_volatile(value: Any) -> Any:
    if isinstance(value, dict):
        return {
            k: _strip_volatile(v)
            for k, v in value.items()
            if k not in VOLATILE_FIELDS
        }
    if isinstance(value, list):
        return [_strip_volatile(v) for v in value]
    return value


def canonical_json(value: Any) -> str:
    """Deterministic JSON text for `value` (volatile fields retained)."""
    return json.dumps(
        value, sort_keys=True, separators=(",", ":"), ensure_ascii=False,
        allow_nan=False,
    )


def canonical_bytes(value: Any) -> bytes:
    """Canonical UTF-8 bytes with volatile fields stripped; hash input."""
    return canonical_json(_strip_volatile(value)).encode("utf-8")


def content_hash(value: Any) -> str:
    """sha256 hex digest of the canonical bytes."""
    return hashlib.sha256(canonical_bytes(value)).hexdigest()


def short_hash(*parts: str, length: int = 16) -> str:
    """Stable short id from string parts; used for chunk/snippet ids."""
    h = hashlib.sha256("\x1f".join(parts).encode("utf-8"))
    return h.hexdigest()[:length]
