"""Exception types shared across the pipeline."""


class ClauseLensError(Exception):
    """Base class for all errors raised by this package."""


class MalformedSource(ClauseLensError):
    """Source file could not be parsed as its declared format."""


class UnknownFormat(ClauseLensError):
    """Policy source declares a format we do not support."""


class MissingBinding(ClauseLensError):
    """A prompt template placeholder was left unbound."""


class ProviderError(ClauseLensError):
    """The completion/embedding provider failed (network, auth, quota)."""


class ReplayMiss(ClauseLensError):
    """Replay cache has no entry for the request hash."""


class InvalidInput(ClauseLensError):
    """An operation precondition was violated."""


class UnparseableCompletion(ClauseLensError):
    """Model output could not be parsed, even after one re-prompt."""


class EmptyResult(ClauseLensError):
    """Model returned no usable items for a chunk."""


class AlignmentFailed(ClauseLensError):
    """No acceptable span found for a reference text."""


class InvalidCategory(ClauseLensError):
    """Power classification outside {Service, Neutral, User}."""


class InvalidLevel(ClauseLensError):
    """Relevance classification outside {High, Low}."""


class DimensionMismatch(ClauseLensError):
    """Vectors of different dimensions were combined."""


class EmptyIndex(ClauseLensError):
    """Retrieval was attempted against an index with no entries."""


class ValidationError(ClauseLensError):
    """A bundle or fixture failed structural validation."""


class NotFound(ClauseLensError):
    """A contract, policy, or chunk id did not resolve."""


class SchemaError(ClauseLensError):
    """An interaction event failed schema validation."""


class SequenceError(ClauseLensError):
    """An interaction event violated per-session sequence monotonicity."""
