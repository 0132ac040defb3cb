"""Completion/embedding providers behind one small interface.

OpenAICompatProvider is the only network path in the package. The
scripted provider is a deterministic stand-in used to record fixture
caches and to run the pipeline offline (demos, tests): it answers from
a fixed table for known inputs and falls back to transparent heuristics.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
import threading
from typing import Protocol

from ..errors import ProviderError
from . import scripted_answers as answers
from .templates import RETRY_SUFFIX


class Provider(Protocol):
    model_id: str
    embed_model_id: str

    def complete(self, prompt: str, params: dict) -> str: ...

    def embed(self, text: str) -> list[float]: ...


class OpenAICompatProvider:
    """Chat-completions + embeddings against an OpenAI-style HTTP API."""

    def __init__(self, api_key: str, base_url: str, model_id: str,
                 embed_model_id: str, timeout: float = 60.0):
        import httpx  # imported here so offline use never needs it

        if not api_key:
            raise ProviderError("PROVIDER_API_KEY is not set")
        self.model_id = model_id
        self.embed_model_id = embed_model_id
        self._client = httpx.Client(
            base_url=base_url.rstrip("/"),
            headers={"Authorization": f"Bearer {api_key}"},
            timeout=timeout,
        )

    def complete(self, prompt: str, params: dict) -> str:
        body = {
            "model": self.model_id,
            "messages": [{"role": "user", "content": prompt}],
        }
        body.update({k: v for k, v in params.items() if v is not None})
        try:
            resp = self._client.post("/chat/completions", json=body)
            resp.raise_for_status()
            return resp.json()["choices"][0]["message"]["content"]
        except Exception as exc:
            raise ProviderError(f"completion call failed: {exc}") from exc

    def embed(self, text: str) -> list[float]:
        try:
            resp = self._client.post(
                "/embeddings", json={"model": self.embed_model_id, "input": text})
            resp.raise_for_status()
            return resp.json()["data"][0]["embedding"]
        except Exception as exc:
            raise ProviderError(f"embedding call failed: {exc}") from exc


class CountingProvider:
    """Wraps a provider and counts outbound calls (fixture/test support)."""

    def __init__(self, inner: Provider):
        self.inner = inner
        self.model_id = inner.model_id
        self.embed_model_id = inner.embed_model_id
        self.completion_calls = 0
        self.embedding_calls = 0
        self._lock = threading.Lock()

    @property
    def total_calls(self) -> int:
        return self.completion_calls + self.embedding_calls

    def complete(self, prompt: str, params: dict) -> str:
        with self._lock:
            self.completion_calls += 1
        return self.inner.complete(prompt, params)

    def embed(self, text: str) -> list[float]:
        with self._lock:
            self.embedding_calls += 1
        return self.inner.embed(text)


class FailingProvider:
    """Always raises; stands in when no provider is configured."""

    model_id = "none"
    embed_model_id = "none"

    def complete(self, prompt: str, params: dict) -> str:
        raise ProviderError("no completion provider configured")

    def embed(self, text: str) -> list[float]:
        raise ProviderError("no embedding provider configured")


_WORD_RE = re.compile(r"[A-Za-z][A-Za-z'-]*")


class ScriptedProvider:
    """Deterministic offline provider.

    Completions are pure functions of the rendered prompt; embeddings
    are hashed bag-of-words vectors. Good enough to drive every pipeline
    stage end to end without a network.
    """

    model_id = "scripted-lm-1"
    embed_model_id = "scripted-embed-1"

    def __init__(self, embed_dim: int = 64):
        self.embed_dim = embed_dim

    # -- completions ---------------------------------------------------
    def complete(self, prompt: str, params: dict) -> str:
        prompt = prompt.removesuffix(RETRY_SUFFIX)
        if prompt.startswith("Summarize the input section"):
            return self._summarize(_after_last(prompt, "\nInput: "))
        if prompt.startswith("Classify the input term"):
            return self._classify_power(_after_last(prompt, "\nInput: "))
        if prompt.startswith("For the input term from a Terms of Service"):
            persona = _between(prompt, "User Persona: ", "\n\nOutput format")
            return self._classify_relevance(
                _after_last(prompt, "\nInput: "), persona)
        if "extracts words or multi-word phrases" in prompt[:200]:
            return self._identify(_after_last(prompt, "\nInput: "),
                                  "Jargon", answers.JARGON_TERMS)
        if "extracts vague terms" in prompt[:200]:
            return self._identify(_after_last(prompt, "\nInput: "),
                                  "Vague", answers.VAGUE_TERMS)
        if prompt.startswith("Use information in the retrieved context"):
            phrase = _between(prompt, "Question: What does ", " refer to?",
                              last=True)
            context = _between(prompt, "Retrieved Context: ", "\n\nQuestion:")
            return self._define(phrase, context)
        if prompt.startswith("Tell a concise what-if scenario"):
            phrase = _between(prompt, "User selected phrase: ",
                              "\nContext around the user-selected phrase:")
            return self._scenario(phrase)
        if prompt.startswith("You are an assistant for question-answering"):
            question = _between(prompt, "\nQuestion: ",
                                "\nUser selected phrase:")
            context = _between(prompt, "Retrieved Context: ", "\n\nQuestion:")
            return self._ask(question, context)
        raise ProviderError("scripted provider does not recognize this prompt")

    def _summarize(self, chunk: str) -> str:
        bullets = []
        for para in re.split(r"\n+", chunk):
            if not para.strip():
                continue
            key = para.strip()
            summary = answers.SUMMARIES.get(key)
            if summary is None:
                words = key.split()
                summary = " ".join(words[:10]).rstrip(",;:")
            bullets.append(f"- {summary} {{{para}}}")
        return "\n".join(bullets)

    def _classify_power(self, snippet: str) -> str:
        key = snippet.strip()
        category = answers.POWER_LABELS.get(key)
        matched = None
        if category is None:
            lowered = key.lower()
            for pattern, cat in answers.POWER_PATTERNS:
                if pattern in lowered:
                    category, matched = cat, pattern
                    break
            else:
                category = "Neutral"
        explanation = (f"Matched pattern '{matched}'." if matched
                       else "Scripted classification.")
        return json.dumps({"Category": category, "Explanation": explanation})

    def _classify_relevance(self, snippet: str, persona: str) -> str:
        key = snippet.strip()
        level = answers.RELEVANCE_LABELS.get(key)
        if level is None:
            persona_terms = {
                w.lower() for w in _WORD_RE.findall(persona) if len(w) > 5}
            snippet_terms = {
                w.lower() for w in _WORD_RE.findall(snippet) if len(w) > 5}
            level = "High" if persona_terms & snippet_terms else "Low"
        return json.dumps({"Relevance": level,
                           "Explanation": "Scripted classification."})

    def _identify(self, chunk: str, kind: str, terms: tuple[str, ...]) -> str:
        found = [t for t in terms if t in chunk]
        return json.dumps({kind: found})

    def _define(self, phrase: str, context: str) -> str:
        entries = _parse_context(context)
        entry = answers.DEFINITIONS.get(phrase.strip())
        if entry is not None:
            definition, wants_refs = entry
        else:
            definition = (f"{phrase} refers to the terms described in the "
                          "cited policy sections.")
            wants_refs = True
        used: list[str] = []
        if wants_refs and entries:
            containing = [rid for rid, text in entries if phrase in text]
            used = containing[:2] if containing else [entries[0][0]]
        return json.dumps({"Definition": definition, "References": used})

    def _scenario(self, phrase: str) -> str:
        story = answers.SCENARIOS.get(phrase.strip())
        if story is None:
            story = (f"Imagine agreeing to these terms and later finding "
                     f"that '{phrase}' lets the service act in ways you did "
                     "not expect, affecting how you use the platform.")
        return json.dumps({"Story": story})

    def _ask(self, question: str, context: str) -> str:
        entries = _parse_context(context)
        q_tokens = {w.lower() for w in _WORD_RE.findall(question)
                    if len(w) > 2}
        best_ref, best_score = None, 0
        for rid, text in entries:
            tokens = {w.lower() for w in _WORD_RE.findall(text) if len(w) > 2}
            score = len(q_tokens & tokens)
            if score > best_score:
                best_ref, best_score = rid, score
        if best_ref is None and entries:
            best_ref = entries[0][0]
        answer = answers.QA.get(question.strip())
        if answer is None:
            answer = ("Based on the retrieved policy sections, the terms "
                      "address this directly; review the cited passages.")
        refs = [best_ref] if best_ref else []
        return json.dumps({"Answer": answer, "References": refs})

    # -- embeddings ----------------------------------------------------
    def embed(self, text: str) -> list[float]:
        vec = [0.0] * self.embed_dim
        for token in _WORD_RE.findall(text.lower()):
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            bucket = int.from_bytes(digest[:4], "big") % self.embed_dim
            sign = 1.0 if digest[4] % 2 == 0 else -1.0
            vec[bucket] += sign
        norm = math.sqrt(sum(v * v for v in vec))
        if norm == 0.0:
            return vec
        return [v / norm for v in vec]


_CTX_HEAD_RE = re.compile(r"(?m)^(ref\d+): ")


def _parse_context(context: str) -> list[tuple[str, str]]:
    """Split a retrieved-context block into (ref_id, chunk_text) pairs."""
    marks = list(_CTX_HEAD_RE.finditer(context))
    out = []
    for m, nxt in zip(marks, marks[1:] + [None]):
        end = nxt.start() if nxt else len(context)
        out.append((m.group(1), context[m.end():end].strip()))
    return out


def _after_last(prompt: str, marker: str) -> str:
    _, found, rest = prompt.rpartition(marker)
    if not found:
        raise ProviderError(f"marker {marker!r} not found in prompt")
    return rest.removesuffix("\n")


def _between(prompt: str, start: str, end: str, last: bool = False) -> str:
    idx = prompt.rfind(start) if last else prompt.find(start)
    if idx < 0:
        raise ProviderError(f"marker {start!r} not found in prompt")
    begin = idx + len(start)
    stop = prompt.find(end, begin)
    if stop < 0:
        raise ProviderError(f"marker {end!r} not found in prompt")
    return prompt[begin:stop]
