"""Persona profile, loaded from data so tone stays swappable without a rebuild."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..errors import ValidationError

_RESOURCES = Path(__file__).resolve().parent.parent / "resources"


@dataclass(frozen=True)
class PersonaProfile:
    name: str
    tone: tuple
    style: dict  # language -> snippet dict

    def validate(self, languages=("it", "en")) -> "PersonaProfile":
        for lang in languages:
            if lang not in self.style:
                raise ValidationError("style", f"missing snippets for language {lang!r}")
        return self

    def snippets(self, language: str) -> dict:
        return self.style.get(language) or next(iter(self.style.values()))


def load_persona(path: str | Path | None = None) -> PersonaProfile:
    path = Path(path) if path else _RESOURCES / "persona_zia.json"
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return PersonaProfile(data["name"], tuple(data.get("tone", [])),
                          dict(data["style"])).validate()
