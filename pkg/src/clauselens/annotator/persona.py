"""User personas: loading and deterministic text rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import ValidationError


@dataclass(frozen=True)
class Persona:
    persona_id: str
    domain: str  # e.g. "Social Media", "E-commerce"
    service_descriptor: str  # e.g. "a Social Media platform"
    usage: tuple[str, ...]
    values: tuple[str, ...]

    @property
    def rendered_text(self) -> str:
        usage = "\n".join(f"- {u}" for u in self.usage)
        values = "\n".join(f"- {v}" for v in self.values)
        return (
            f"Imagine you are a lay user of {self.domain} platforms. "
            "You are over 18 years old and located in the United States.\n\n"
            f"Your usage of {self.domain} sites:\n{usage}\n\n"
            f"Things you care about when using {self.domain} sites:\n{values}"
        )

    def to_dict(self) -> dict:
        return {
            "persona_id": self.persona_id,
            "domain": self.domain,
            "service_descriptor": self.service_descriptor,
            "usage": list(self.usage),
            "values": list(self.values),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Persona":
        for key in ("persona_id", "domain", "service_descriptor", "usage",
                    "values"):
            if key not in data:
                raise ValidationError(f"persona missing key {key!r}")
        if not data["usage"] or not data["values"]:
            raise ValidationError("persona usage/values must be non-empty")
        return cls(
            persona_id=data["persona_id"],
            domain=data["domain"],
            service_descriptor=data["service_descriptor"],
            usage=tuple(data["usage"]),
            values=tuple(data["values"]),
        )


def load_persona(path: str | Path) -> Persona:
    return Persona.from_dict(json.loads(Path(path).read_text("utf-8")))
