"""Content-addressed record/replay store for provider exchanges.

One JSON file per exchange, filename = request hash, so fixtures are
human-diffable. Writes are atomic (temp file + rename) and therefore
safe under concurrent completes.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..canonical import canonical_json, content_hash


@dataclass(frozen=True)
class CompletionRequest:
    """Everything that identifies one completion call.

    The request hash is a pure function of these fields; the rendered
    prompt is carried for the provider and the stored exchange but does
    not enter the hash (it is itself derived from template + bindings).
    """

    template_id: str
    version: str
    bindings: dict[str, str]
    model_id: str
    params: dict  # decoding params: temperature, max_tokens, ...
    rendered_prompt: str

    @property
    def request_hash(self) -> str:
        return content_hash({
            "kind": "completion",
            "template_id": self.template_id,
            "version": self.version,
            "bindings": self.bindings,
            "model_id": self.model_id,
            "params": self.params,
        })


def embedding_request_hash(model_id: str, text: str) -> str:
    return content_hash({"kind": "embedding", "model_id": model_id,
                         "text": text})


@dataclass
class PromptExchange:
    request_hash: str
    template_id: str
    version: str
    bindings: dict[str, str]
    model_id: str
    params: dict
    rendered_prompt: str
    raw_completion: str
    provider_model_id: str
    timestamp: str = field(default_factory=lambda: _now())

    @classmethod
    def from_request(cls, req: CompletionRequest, raw_completion: str,
                     provider_model_id: str) -> "PromptExchange":
        return cls(
            request_hash=req.request_hash,
            template_id=req.template_id,
            version=req.version,
            bindings=dict(req.bindings),
            model_id=req.model_id,
            params=dict(req.params),
            rendered_prompt=req.rendered_prompt,
            raw_completion=raw_completion,
            provider_model_id=provider_model_id,
        )

    def recompute_hash(self) -> str:
        """Hash from the stored fields; must equal request_hash."""
        return content_hash({
            "kind": "completion",
            "template_id": self.template_id,
            "version": self.version,
            "bindings": self.bindings,
            "model_id": self.model_id,
            "params": self.params,
        })


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class ReplayCache:
    """File-backed exchange store with completions/ and embeddings/."""

    def __init__(self, cache_dir: str | Path):
        self.root = Path(cache_dir)
        (self.root / "completions").mkdir(parents=True, exist_ok=True)
        (self.root / "embeddings").mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    # -- completions ---------------------------------------------------
    def _completion_path(self, request_hash: str) -> Path:
        return self.root / "completions" / f"{request_hash}.json"

    def get_completion(self, request_hash: str) -> PromptExchange | None:
        path = self._completion_path(request_hash)
        if not path.is_file():
            return None
        data = json.loads(path.read_text("utf-8"))
        return PromptExchange(**data)

    def put_completion(self, exchange: PromptExchange) -> None:
        self._atomic_write(self._completion_path(exchange.request_hash),
                           asdict(exchange))

    def completion_hashes(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "completions").glob("*.json"))

    # -- embeddings ----------------------------------------------------
    def _embedding_path(self, request_hash: str) -> Path:
        return self.root / "embeddings" / f"{request_hash}.json"

    def get_embedding(self, request_hash: str) -> list[float] | None:
        path = self._embedding_path(request_hash)
        if not path.is_file():
            return None
        return json.loads(path.read_text("utf-8"))["values"]

    def put_embedding(self, request_hash: str, model_id: str, text: str,
                      values: list[float]) -> None:
        self._atomic_write(self._embedding_path(request_hash), {
            "request_hash": request_hash,
            "model_id": model_id,
            "text": text,
            "values": values,
            "timestamp": _now(),
        })

    def embedding_hashes(self) -> list[str]:
        return sorted(p.stem for p in (self.root / "embeddings").glob("*.json"))

    # -- plumbing -------------------------------------------------------
    def _atomic_write(self, path: Path, payload: dict) -> None:
        body = canonical_json(payload)
        with self._lock:
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(body)
                os.replace(tmp, path)
            finally:
                if os.path.exists(tmp):
                    os.unlink(tmp)
