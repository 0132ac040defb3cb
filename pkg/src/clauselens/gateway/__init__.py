"""Provider gateway: prompt templates, record/replay cache, embeddings."""

from .cache import (
    CompletionRequest,
    PromptExchange,
    ReplayCache,
    embedding_request_hash,
)
from .core import EmbeddingVector, Gateway
from .providers import (
    CountingProvider,
    FailingProvider,
    OpenAICompatProvider,
    Provider,
    ScriptedProvider,
)
from .templates import (
    ASK_EXAMPLES,
    DEFINE_EXAMPLES,
    RETRY_SUFFIX,
    SUMMARIZE_EXAMPLE_OUTPUT,
    TEMPLATE_IDS,
    TEMPLATES,
    PromptTemplate,
    render_prompt,
    template_versions,
)

__all__ = [
    "ASK_EXAMPLES", "CompletionRequest", "CountingProvider",
    "DEFINE_EXAMPLES", "EmbeddingVector", "FailingProvider", "Gateway",
    "OpenAICompatProvider", "PromptExchange", "PromptTemplate", "Provider",
    "RETRY_SUFFIX", "ReplayCache", "SUMMARIZE_EXAMPLE_OUTPUT",
    "ScriptedProvider", "TEMPLATES", "TEMPLATE_IDS",
    "embedding_request_hash", "render_prompt", "template_versions",
]
