"""High-level orchestration: ingest -> annotate -> bundle -> index.

Shared by the CLI and fixture-building scripts. Provider construction
is the only place that looks at credentials.
"""

from __future__ import annotations

import logging
from pathlib import Path

from .annotator import Persona, annotate_policy
from .config import AppConfig
from .corpus import ingest_contract
from .errors import ProviderError
from .gateway import (
    Gateway,
    OpenAICompatProvider,
    Provider,
    ReplayCache,
    ScriptedProvider,
)
from .scope import VectorIndex, build_index, save_index
from .service import BundleStore, build_bundle

logger = logging.getLogger(__name__)


def make_provider(config: AppConfig) -> Provider | None:
    """Pick the provider for record mode; replay modes need none."""
    if config.scripted_provider:
        return ScriptedProvider(embed_dim=config.embed_dim)
    if config.mode in ("replay", "strict-replay"):
        return None
    if not config.api_key:
        raise ProviderError(
            "record mode needs PROVIDER_API_KEY (or the scripted provider)")
    return OpenAICompatProvider(
        api_key=config.api_key,
        base_url=config.base_url,
        model_id=config.model_id,
        embed_model_id=config.embed_model_id,
    )


def make_gateway(config: AppConfig,
                 provider: Provider | None = None) -> Gateway:
    if provider is None:
        provider = make_provider(config)
    if provider is not None:
        # Keep bundle provenance truthful about what actually answered.
        config.model_id = provider.model_id
        config.embed_model_id = provider.embed_model_id
    return Gateway(config, ReplayCache(config.cache_dir), provider)


def annotate_contract(contract_dir: str | Path, persona: Persona,
                      gateway: Gateway, max_workers: int = 1) -> dict:
    """Run the full annotation pipeline for one contract directory."""
    manifest, policies = ingest_contract(contract_dir)
    annotations = {}
    for policy in policies:
        logger.info("annotating policy %s (%d chunks)", policy.policy_id,
                    len(policy.chunks))
        annotations[policy.policy_id] = annotate_policy(
            gateway, policy, persona, max_workers=max_workers)
    return build_bundle(
        manifest=manifest,
        policies=policies,
        annotations=annotations,
        persona=persona,
        model_id=gateway.config.model_id,
        embed_model_id=gateway.config.embed_model_id,
    )


def index_contract(bundle: dict, gateway: Gateway,
                   store: BundleStore | None = None) -> VectorIndex:
    """Embed every chunk of a bundle and build (optionally persist) the
    contract-wide vector index."""
    entries = []
    for policy in bundle["policies"]:
        for chunk in policy["chunks"]:
            vec = gateway.embed(chunk["text"])
            entries.append((chunk["chunk_id"], list(vec.values)))
    index = build_index(entries)
    if store is not None:
        save_index(index, store.index_path(bundle["contract_id"]))
    return index


def pregenerate_scope(bundle: dict, gateway: Gateway, store: BundleStore,
                      retrieval_k: int = 15) -> int:
    """Batch-generate phrase-scope results for every identified phrase
    and persist them, so the reading service can stay in replay mode.
    Returns the number of newly generated results."""
    from .annotator.persona import Persona
    from .scope import ScopeGenerator, load_index
    from .service.bundle import scope_record

    contract_id = bundle["contract_id"]
    index = load_index(store.index_path(contract_id))
    chunk_texts = {
        c["chunk_id"]: c["text"]
        for policy in bundle["policies"] for c in policy["chunks"]}
    generator = ScopeGenerator(gateway, index, chunk_texts, k=retrieval_k)
    persona = Persona.from_dict(bundle["provenance"]["persona"])
    existing = {r["key"] for r in bundle.get("scope_results", [])}
    generated = 0
    for policy in bundle["policies"]:
        for phrase in policy["phrases"]:
            span = tuple(phrase["span"])
            key = (f"{phrase['chunk_id']}:{span[0]}:{span[1]}:"
                   f"{persona.persona_id}")
            if key in existing:
                continue
            result = generator.phrase_scope(phrase["surface_text"],
                                            phrase["chunk_id"], persona)
            store.upsert_scope_result(
                contract_id,
                scope_record(phrase["chunk_id"], span, persona.persona_id,
                             result))
            existing.add(key)
            generated += 1
    return generated
