"""Uniform gateway over chat providers: completion and structured extraction."""

from __future__ import annotations

import logging
from datetime import date as Date, timedelta

from ..errors import ProviderError, ValidationError
from ..dialogue.models import TripRequest
from .providers import CompletionRequest, EXTRACT_MARKER

logger = logging.getLogger(__name__)


def extract_structured(message: str, provider, language: str = "it",
                       base_date: Date | None = None) -> dict:
    """Ask the model for strict key=value slot values; validate before accepting.

    Anything unparsable or invariant-breaking yields an empty update.
    """
    prompt = (f"{EXTRACT_MARKER}\nReturn one key=value per line using keys "
              f"nights, destination, budget. Message: {message}")
    request = CompletionRequest(system="", messages=[("user", prompt)],
                                temperature=0.0, language=language)
    try:
        raw = provider.complete(request)
    except ProviderError:
        logger.warning("structured extraction provider failure")
        return {}
    values = {}
    for line in raw.splitlines():
        if "=" not in line:
            continue
        key, _, value = line.partition("=")
        values[key.strip().lower()] = value.strip()

    updates: dict = {}
    if "destination" in values and values["destination"]:
        updates["destination"] = values["destination"]
    if "nights" in values:
        try:
            nights = int(values["nights"])
            start = base_date or Date(2026, 6, 1)
            if nights >= 0:
                updates["date_range"] = (start, start + timedelta(days=nights))
        except ValueError:
            pass
    if "budget" in values:
        try:
            updates["budget_total"] = float(values["budget"])
        except ValueError:
            pass
    try:
        TripRequest().merged(updates)
    except ValidationError as exc:
        logger.info("model extraction rejected: %s", exc)
        return {}
    return updates


class LlmGateway:
    """Provider plus persona, shared by dialogue and narration call sites."""

    def __init__(self, provider, persona, default_temperature: float = 0.7):
        self.provider = provider
        self.persona = persona
        self.default_temperature = default_temperature

    @property
    def is_live(self) -> bool:
        return getattr(self.provider, "is_live", False)

    def complete(self, request: CompletionRequest) -> str:
        return self.provider.complete(request)

    def extract(self, message: str, language: str, base_date: Date | None = None) -> dict:
        return extract_structured(message, self.provider, language, base_date)
