"""Runtime configuration shared by the CLI and the HTTP service.

Precedence: command-line flags > environment variables > config file.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

GATEWAY_MODES = ("record", "replay", "strict-replay")

ENV_VARS = {
    "api_key": "PROVIDER_API_KEY",
    "base_url": "PROVIDER_BASE_URL",
    "model_id": "MODEL_ID",
    "embed_model_id": "EMBED_MODEL_ID",
    "mode": "GATEWAY_MODE",
    "cache_dir": "CACHE_DIR",
}


@dataclass
class AppConfig:
    api_key: str = ""
    base_url: str = "https://api.openai.com/v1"
    model_id: str = "gpt-4o"
    embed_model_id: str = "text-embedding-3-small"
    mode: str = "replay"
    cache_dir: str = ".clauselens-cache"
    store_dir: str = ".clauselens-store"
    max_inflight: int = 4
    embed_dim: int = 1536
    # Classification/identification run at temperature 0 for
    # reproducibility; scenario generation is creative text.
    temperature_deterministic: float = 0.0
    temperature_scenario: float = 0.7
    retrieval_k: int = 15
    scripted_provider: bool = False
    color_hexes: dict = field(default_factory=lambda: dict(DEFAULT_COLOR_HEXES))

    def __post_init__(self) -> None:
        if self.mode not in GATEWAY_MODES:
            raise ValueError(f"GATEWAY_MODE must be one of {GATEWAY_MODES}")


DEFAULT_COLOR_HEXES = {
    "service-high": "#d64550",
    "service-low": "#f2b8bd",
    "neutral-high": "#e5b32a",
    "neutral-low": "#f5e6b8",
    "user-high": "#2f9e5f",
    "user-low": "#bfe6cf",
}


def load_config(config_file: str | Path | None = None,
                env: dict | None = None, **overrides) -> AppConfig:
    """Build an AppConfig: file values, then env vars, then overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    if config_file:
        values.update(json.loads(Path(config_file).read_text("utf-8")))
    for attr, var in ENV_VARS.items():
        if env.get(var):
            values[attr] = env[var]
    known = {f.name for f in fields(AppConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cfg = AppConfig(**values)
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **overrides) if overrides else cfg
