"""HTTP API over the bundle store: reading endpoints are pure
projections of the loaded bundles; /phrases/* may trigger gateway calls
whose results are cached back into the store; /events is append-only.

Read responses are serialized canonically so identical requests return
identical bytes.
"""

from __future__ import annotations

import logging
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from ..annotator.persona import Persona
from ..canonical import canonical_json
from ..errors import (
    EmptyIndex,
    InvalidInput,
    NotFound,
    ProviderError,
    ReplayMiss,
    SchemaError,
    SequenceError,
    UnparseableCompletion,
)
from ..gateway import Gateway
from ..meter import color_for, compute_meter, meter_preview
from ..scope import ScopeGenerator, load_index
from .bundle import BundleStore, annotation_from_policy, scope_record
from .events import EventLog

logger = logging.getLogger(__name__)


class ServiceState:
    """Loaded bundles plus lazily constructed scope generators."""

    def __init__(self, store: BundleStore, events: EventLog,
                 gateway: Gateway | None = None, retrieval_k: int = 15):
        self.store = store
        self.events = events
        self.gateway = gateway
        self.retrieval_k = retrieval_k
        self._scopes: dict[str, ScopeGenerator] = {}

    # -- lookups ---------------------------------------------------------
    def contracts(self) -> list[dict]:
        out = []
        for contract_id in self.store.contract_ids():
            bundle = self.store.load(contract_id)
            out.append({
                "contract_id": contract_id,
                "title": bundle.get("title", contract_id),
                "policy_count": len(bundle["policies"]),
            })
        return out

    def find_policy(self, policy_id: str) -> tuple[str, dict]:
        for contract_id in self.store.contract_ids():
            bundle = self.store.load(contract_id)
            for policy in bundle["policies"]:
                if policy["policy_id"] == policy_id:
                    return contract_id, policy
        raise NotFound(f"no policy {policy_id!r}")

    def persona_for(self, contract_id: str) -> Persona:
        bundle = self.store.load(contract_id)
        return Persona.from_dict(bundle["provenance"]["persona"])

    def scope_for(self, contract_id: str) -> ScopeGenerator:
        if contract_id in self._scopes:
            return self._scopes[contract_id]
        if self.gateway is None:
            raise ProviderError("service started without a gateway")
        index_path = self.store.index_path(contract_id)
        if not index_path.is_file():
            raise NotFound(f"no vector index for contract {contract_id!r}; "
                           "run the index command first")
        bundle = self.store.load(contract_id)
        chunk_texts = {
            c["chunk_id"]: c["text"]
            for policy in bundle["policies"] for c in policy["chunks"]}
        generator = ScopeGenerator(self.gateway, load_index(index_path),
                                   chunk_texts, k=self.retrieval_k)
        self._scopes[contract_id] = generator
        return generator


def _canonical_response(payload, status_code: int = 200) -> Response:
    return Response(content=canonical_json(payload),
                    media_type="application/json; charset=utf-8",
                    status_code=status_code)


def _error(status_code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status_code,
                        content={"error": message})


def _policy_view(policy: dict) -> dict:
    """The joined, render-ready projection of one policy."""
    ann = annotation_from_policy(policy)
    summaries = {s.snippet_id: s for s in ann.summaries}
    powers = {l.snippet_id: l for l in ann.power_labels}
    relevances = {l.snippet_id: l for l in ann.relevance_labels}
    snippets = []
    for snippet in ann.snippets:
        summary = summaries.get(snippet.snippet_id)
        power = powers.get(snippet.snippet_id)
        relevance = relevances.get(snippet.snippet_id)
        entry = {
            "snippet_id": snippet.snippet_id,
            "chunk_id": snippet.chunk_id,
            "span": list(snippet.span),
            "text": snippet.text,
            "unsummarized": snippet.unsummarized,
            "summary_text": summary.summary_text if summary else "",
            "word_count": summary.word_count if summary else 0,
            "truncated": bool(summary and summary.truncated),
        }
        if power and relevance:
            token = color_for(power.category, relevance.level)
            entry.update({
                "power": power.category,
                "power_explanation": power.explanation,
                "relevance": relevance.level,
                "relevance_explanation": relevance.explanation,
                "color": token.token,
                "color_hex": token.hex,
            })
        snippets.append(entry)
    return {
        "policy_id": policy["policy_id"],
        "title": policy["title"],
        "order_index": policy["order_index"],
        "chunks": policy["chunks"],
        "snippets": snippets,
        "phrases": policy["phrases"],
        "links": policy["links"],
        "meter": policy["meter"],
        "errors": policy["errors"],
    }


def create_app(state: ServiceState, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="clauselens", docs_url=None, redoc_url=None)

    @app.exception_handler(Exception)
    async def _unhandled(request: Request, exc: Exception):
        logger.exception("unhandled error for %s", request.url.path)
        return _error(500, f"internal error: {type(exc).__name__}")

    @app.get("/healthz")
    def healthz():
        return _canonical_response({
            "status": "ok",
            "contracts": len(state.store.contract_ids()),
        })

    @app.get("/contracts")
    def contracts():
        return _canonical_response(state.contracts())

    @app.get("/contracts/{contract_id}/policies")
    def contract_policies(contract_id: str):
        try:
            bundle = state.store.load(contract_id)
        except NotFound as exc:
            return _error(404, str(exc))
        policies = []
        for policy in sorted(bundle["policies"],
                             key=lambda p: p["order_index"]):
            ann = annotation_from_policy(policy)
            policies.append({
                "policy_id": policy["policy_id"],
                "title": policy["title"],
                "order_index": policy["order_index"],
                "meter": policy["meter"],
                "preview": meter_preview(ann),
            })
        return _canonical_response({
            "contract_id": contract_id,
            "title": bundle.get("title", contract_id),
            "policies": policies,
        })

    @app.get("/policies/{policy_id}")
    def policy(policy_id: str):
        try:
            _, payload = state.find_policy(policy_id)
        except NotFound as exc:
            return _error(404, str(exc))
        return _canonical_response(_policy_view(payload))

    @app.get("/policies/{policy_id}/meter")
    def policy_meter(policy_id: str, weighting: str = "count"):
        if weighting not in ("count", "char_length"):
            return _error(400, "weighting must be count or char_length")
        try:
            _, payload = state.find_policy(policy_id)
        except NotFound as exc:
            return _error(404, str(exc))
        meter = compute_meter(annotation_from_policy(payload), weighting)
        return _canonical_response(meter.to_dict())

    @app.post("/phrases/scope")
    async def phrase_scope(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        try:
            contract_id, chunk, span, phrase = _resolve_phrase_target(
                state, body)
        except NotFound as exc:
            return _error(404, str(exc))
        except SchemaError as exc:
            return _error(400, str(exc))
        except _SpanError as exc:
            return _error(409, str(exc))

        persona = state.persona_for(contract_id)
        key = f"{chunk['chunk_id']}:{span[0]}:{span[1]}:{persona.persona_id}"
        cached = state.store.find_scope_result(contract_id, key)
        if cached is not None:
            return _canonical_response(cached)
        try:
            generator = state.scope_for(contract_id)
            result = generator.phrase_scope(phrase, chunk["chunk_id"],
                                            persona)
        except ReplayMiss as exc:
            return _error(503, f"gateway replay miss: {exc}")
        except (ProviderError, EmptyIndex, NotFound) as exc:
            return _error(503, str(exc))
        except (UnparseableCompletion, InvalidInput) as exc:
            return _error(502, f"generation failed: {exc}")
        stored = state.store.upsert_scope_result(
            contract_id, scope_record(chunk["chunk_id"], span,
                                      persona.persona_id, result))
        return _canonical_response(stored)

    @app.post("/phrases/ask")
    async def phrase_ask(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        for field in ("policy_id", "chunk_id", "phrase", "question"):
            if not isinstance(body.get(field), str) or not body[field].strip():
                return _error(400, f"missing or empty field {field!r}")
        try:
            contract_id, policy_payload = state.find_policy(body["policy_id"])
        except NotFound as exc:
            return _error(404, str(exc))
        chunk = _find_chunk(policy_payload, body["chunk_id"])
        if chunk is None:
            return _error(404, f"no chunk {body['chunk_id']!r}")
        persona = state.persona_for(contract_id)
        key = (f"{chunk['chunk_id']}:{persona.persona_id}:"
               f"{body['phrase']}:{body['question']}")
        cached = state.store.find_ask_result(contract_id, key)
        if cached is not None:
            return _canonical_response(cached)
        try:
            generator = state.scope_for(contract_id)
            answer = generator.answer_question(body["question"],
                                               body["phrase"],
                                               chunk["chunk_id"])
        except ReplayMiss as exc:
            return _error(503, f"gateway replay miss: {exc}")
        except (ProviderError, EmptyIndex, NotFound) as exc:
            return _error(503, str(exc))
        except (UnparseableCompletion, InvalidInput) as exc:
            return _error(502, f"generation failed: {exc}")
        record = {
            "key": key,
            "chunk_id": chunk["chunk_id"],
            "phrase": body["phrase"],
            "question": answer.question,
            "answer_text": answer.answer_text,
            "refs": list(answer.refs),
            "persona_id": persona.persona_id,
        }
        stored = state.store.upsert_ask_result(contract_id, record)
        return _canonical_response(stored)

    @app.post("/events")
    async def post_events(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "body must be JSON")
        events = body.get("events") if isinstance(body, dict) else None
        if not isinstance(events, list):
            return _error(400, "body must be {\"events\": [...]}")
        try:
            accepted = state.events.append_batch(events)
        except SchemaError as exc:
            return _error(400, f"schema: {exc}")
        except SequenceError as exc:
            return _error(400, f"sequence: {exc}")
        return _canonical_response({"accepted": accepted})

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/app", StaticFiles(directory=str(ui_dir), html=True),
                  name="ui")

    return app


class _SpanError(Exception):
    pass


def _find_chunk(policy_payload: dict, chunk_id: str) -> dict | None:
    for chunk in policy_payload["chunks"]:
        if chunk["chunk_id"] == chunk_id:
            return chunk
    return None


def _resolve_phrase_target(state: ServiceState, body: dict):
    """Validate a scope request body down to (contract, chunk, span,
    phrase). Accepts either an explicit span or a phrase_text to locate
    (the arbitrary-highlight path)."""
    if not isinstance(body, dict):
        raise SchemaError("body must be an object")
    for field in ("policy_id", "chunk_id"):
        if not isinstance(body.get(field), str) or not body[field].strip():
            raise SchemaError(f"missing or empty field {field!r}")
    contract_id, policy_payload = state.find_policy(body["policy_id"])
    chunk = _find_chunk(policy_payload, body["chunk_id"])
    if chunk is None:
        raise NotFound(f"no chunk {body['chunk_id']!r} in policy "
                       f"{body['policy_id']!r}")
    text = chunk["text"]
    if "span" in body:
        span = body["span"]
        if (not isinstance(span, list) or len(span) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool)
                           for x in span)):
            raise SchemaError("span must be [start, end] integers")
        start, end = span
        if start < 0 or end > len(text) or start >= end:
            raise _SpanError(
                f"span [{start}, {end}) out of range for chunk of "
                f"length {len(text)}")
        return contract_id, chunk, (start, end), text[start:end]
    phrase_text = body.get("phrase_text")
    if not isinstance(phrase_text, str) or not phrase_text.strip():
        raise SchemaError("provide either span or phrase_text")
    idx = text.find(phrase_text)
    if idx < 0:
        raise _SpanError(f"phrase_text not found in chunk "
                         f"{body['chunk_id']!r}")
    return contract_id, chunk, (idx, idx + len(phrase_text)), phrase_text
