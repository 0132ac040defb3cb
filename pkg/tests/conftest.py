"""Shared fixtures: golden store copies and a replay-mode service app."""

import shutil
from pathlib import Path

import pytest

from clauselens.config import AppConfig
from clauselens.gateway import CountingProvider, Gateway, ReplayCache, ScriptedProvider
from clauselens.service import BundleStore, EventLog, ServiceState, create_app

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN_CACHE = FIXTURES / "golden" / "cache"
GOLDEN_STORE = FIXTURES / "golden" / "store"


@pytest.fixture
def golden_store_copy(tmp_path):
    dest = tmp_path / "store"
    shutil.copytree(GOLDEN_STORE, dest)
    return dest


@pytest.fixture
def service_app(golden_store_copy, tmp_path):
    """App over a fresh golden-store copy in strict-replay mode, with a
    counting provider to prove no provider traffic happens."""
    counting = CountingProvider(ScriptedProvider())
    cfg = AppConfig(mode="strict-replay", cache_dir=str(GOLDEN_CACHE),
                    store_dir=str(golden_store_copy),
                    model_id=counting.model_id,
                    embed_model_id=counting.embed_model_id,
                    retrieval_k=15)
    gateway = Gateway(cfg, ReplayCache(GOLDEN_CACHE), counting)
    state = ServiceState(BundleStore(golden_store_copy),
                         EventLog(tmp_path / "events"), gateway,
                         retrieval_k=15)
    app = create_app(state)
    app.state.counting_provider = counting
    app.state.service_state = state
    return app
