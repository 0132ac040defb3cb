"""Contract manifests: one directory per contract, `contract.manifest` JSON."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

from ..errors import UnknownFormat, ValidationError

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("html", "markdown")


@dataclass(frozen=True)
class PolicySource:
    """One raw policy file as listed in a contract manifest."""

    contract_id: str
    policy_id: str
    title: str
    format: str  # "html" | "markdown"
    raw_text: str
    order_index: int

    def __post_init__(self) -> None:
        if self.format not in SUPPORTED_FORMATS:
            raise UnknownFormat(f"unsupported format {self.format!r}")
        if self.order_index < 0:
            raise ValidationError("order_index must be >= 0")


@dataclass(frozen=True)
class ContractManifest:
    contract_id: str
    title: str
    policies: list[PolicySource]
    source_paths: dict[str, str]  # policy_id -> manifest-relative file path


def load_contract(contract_dir: str | Path) -> ContractManifest:
    """Read `contract.manifest` and the policy files it lists.

    Raises ValidationError on duplicate policy ids, missing files, or a
    malformed manifest; UnknownFormat on unsupported format values.
    """
    contract_dir = Path(contract_dir)
    manifest_path = contract_dir / "contract.manifest"
    if not manifest_path.is_file():
        raise ValidationError(f"no contract.manifest in {contract_dir}")
    try:
        data = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"manifest is not valid JSON: {exc}") from exc

    for key in ("contract_id", "title", "policies"):
        if key not in data:
            raise ValidationError(f"manifest missing key {key!r}")

    policies: list[PolicySource] = []
    source_paths: dict[str, str] = {}
    seen_ids: set[str] = set()
    for entry in data["policies"]:
        for key in ("policy_id", "title", "format", "path", "order_index"):
            if key not in entry:
                raise ValidationError(f"policy entry missing key {key!r}")
        policy_id = entry["policy_id"]
        if policy_id in seen_ids:
            raise ValidationError(f"duplicate policy_id {policy_id!r}")
        seen_ids.add(policy_id)
        file_path = contract_dir / entry["path"]
        if not file_path.is_file():
            raise ValidationError(f"policy file missing: {file_path}")
        source_paths[policy_id] = entry["path"]
        policies.append(
            PolicySource(
                contract_id=data["contract_id"],
                policy_id=policy_id,
                title=entry["title"],
                format=entry["format"],
                raw_text=file_path.read_text(encoding="utf-8"),
                order_index=int(entry["order_index"]),
            )
        )
    policies.sort(key=lambda p: p.order_index)
    logger.info("loaded contract %s: %d policies", data["contract_id"], len(policies))
    return ContractManifest(
        contract_id=data["contract_id"], title=data["title"],
        policies=policies, source_paths=source_paths,
    )
