"""Bundle persistence, HTTP API, and interaction telemetry."""

from .api import ServiceState, create_app
from .bundle import (
    BUNDLE_SCHEMA_VERSION,
    BundleStore,
    annotation_from_policy,
    build_bundle,
    bundle_hash,
    validate_bundle,
)
from .events import EVENT_KINDS, EventLog, validate_event

__all__ = [
    "BUNDLE_SCHEMA_VERSION", "BundleStore", "EVENT_KINDS", "EventLog",
    "ServiceState", "annotation_from_policy", "build_bundle", "bundle_hash",
    "create_app", "validate_bundle", "validate_event",
]
