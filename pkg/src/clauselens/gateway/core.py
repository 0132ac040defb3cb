"""The gateway: sole owner of provider I/O, with record/replay modes.

record        cache hit -> cached; miss -> provider call, persisted.
replay        cache hit -> cached; miss -> ReplayMiss. Callers treat the
              miss as a per-item error and continue.
strict-replay same lookup, but callers abort the run on ReplayMiss.

No other module performs network I/O.
"""

from __future__ import annotations

import hashlib
import math
import threading
from dataclasses import dataclass

from ..config import AppConfig
from ..errors import InvalidInput, ProviderError, ReplayMiss
from .cache import (
    CompletionRequest,
    PromptExchange,
    ReplayCache,
    embedding_request_hash,
)
from .providers import Provider
from .templates import render_prompt

REPLAY_MODES = ("replay", "strict-replay")

# Templates whose outputs must be reproducible run at temperature 0;
# scenario generation is the one creative call.
_CREATIVE_TEMPLATES = frozenset({"scenario"})


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]
    source_text_hash: str

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in self.values):
            raise InvalidInput("embedding contains non-finite components")

    @property
    def dimension(self) -> int:
        return len(self.values)


class _KeyedLocks:
    """Per-key locks so identical in-flight requests coalesce."""

    def __init__(self) -> None:
        self._master = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def get(self, key: str) -> threading.Lock:
        with self._master:
            lock = self._locks.get(key)
            if lock is None:
                lock = self._locks[key] = threading.Lock()
            return lock


class Gateway:
    def __init__(self, config: AppConfig, cache: ReplayCache,
                 provider: Provider | None = None):
        self.config = config
        self.cache = cache
        self.provider = provider
        self._inflight = threading.Semaphore(config.max_inflight)
        self._locks = _KeyedLocks()

    @property
    def mode(self) -> str:
        return self.config.mode

    # -- completions ---------------------------------------------------
    def build_request(self, template_id: str, bindings: dict[str, str],
                      params: dict | None = None) -> CompletionRequest:
        temperature = (self.config.temperature_scenario
                       if template_id in _CREATIVE_TEMPLATES
                       else self.config.temperature_deterministic)
        merged = {"temperature": temperature}
        if params:
            merged.update(params)
        return CompletionRequest(
            template_id=template_id,
            version="1",
            bindings=dict(bindings),
            model_id=self.config.model_id,
            params=merged,
            rendered_prompt=render_prompt(template_id, bindings),
        )

    def complete(self, request: CompletionRequest) -> str:
        if not request.rendered_prompt:
            raise InvalidInput("empty prompt")
        h = request.request_hash
        with self._locks.get(h):
            cached = self.cache.get_completion(h)
            if cached is not None:
                return cached.raw_completion
            if self.mode in REPLAY_MODES:
                raise ReplayMiss(
                    f"no cached completion for {request.template_id} "
                    f"(hash {h[:12]}...)")
            if self.provider is None:
                raise ProviderError("record mode requires a provider")
            with self._inflight:
                raw = self.provider.complete(request.rendered_prompt,
                                             request.params)
            self.cache.put_completion(
                PromptExchange.from_request(request, raw,
                                            self.provider.model_id))
            return raw

    def run(self, template_id: str, bindings: dict[str, str],
            params: dict | None = None) -> str:
        """Render + complete in one step; the usual entry point."""
        return self.complete(self.build_request(template_id, bindings, params))

    # -- embeddings ----------------------------------------------------
    def embed(self, text: str) -> EmbeddingVector:
        if not text or not text.strip():
            raise InvalidInput("cannot embed empty text")
        model_id = self.config.embed_model_id
        h = embedding_request_hash(model_id, text)
        text_hash = hashlib.sha256(text.encode("utf-8")).hexdigest()
        with self._locks.get(h):
            cached = self.cache.get_embedding(h)
            if cached is not None:
                return EmbeddingVector(tuple(cached), text_hash)
            if self.mode in REPLAY_MODES:
                raise ReplayMiss(f"no cached embedding (hash {h[:12]}...)")
            if self.provider is None:
                raise ProviderError("record mode requires a provider")
            with self._inflight:
                values = self.provider.embed(text)
            self.cache.put_embedding(h, model_id, text, values)
            return EmbeddingVector(tuple(values), text_hash)
