"""Itinerary narration with persona tone and a grounding-verified pipeline.

Only facts from the itinerary and the catalog enter the prompt. Generated
text that mentions anything outside the catalog triggers one corrective
regeneration, then the deterministic template takes over — so the final
output never fails the grounding check.
"""

from __future__ import annotations

import logging

from ..errors import ProviderError
from .grounding import verify_grounding
from .persona import PersonaProfile
from .providers import CompletionRequest, NARRATION_MARKER

logger = logging.getLogger(__name__)

_MONTHS = {
    "it": ["gennaio", "febbraio", "marzo", "aprile", "maggio", "giugno", "luglio",
           "agosto", "settembre", "ottobre", "novembre", "dicembre"],
    "en": ["January", "February", "March", "April", "May", "June", "July",
           "August", "September", "October", "November", "December"],
}


def _fmt_time(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def _fmt_date(iso_date: str, language: str) -> str:
    year, month, day = iso_date.split("-")
    name = _MONTHS.get(language, _MONTHS["en"])[int(month) - 1]
    if language == "it":
        return f"{int(day)} {name}"
    return f"{name} {int(day)}"


def _visit_names(itinerary: dict, catalog) -> list:
    names = []
    for day in itinerary["days"]:
        for visit in day["visits"]:
            poi = catalog.get(visit["poi_id"])
            names.append(poi.name if poi else visit.get("name", visit["poi_id"]))
    return names


def template_narration(itinerary: dict, catalog, persona: PersonaProfile,
                       language: str) -> str:
    """Deterministic fallback narration; mentions each planned stop once."""
    snippets = persona.snippets(language)
    if not any(day["visits"] for day in itinerary["days"]):
        return ("Non ho ancora un itinerario pronto per te."
                if language == "it" else "I do not have an itinerary for you yet.")
    parts = [snippets["greeting"]]
    for day_no, day in enumerate(itinerary["days"], 1):
        if not day["visits"]:
            continue
        stops = []
        for visit in day["visits"]:
            poi = catalog.get(visit["poi_id"])
            name = poi.name if poi else visit.get("name", visit["poi_id"])
            stops.append(f"{name} ({_fmt_time(visit['arrival'])})")
        label = snippets["day_label"]
        date_text = _fmt_date(day["date"], language)
        joined = f", {snippets['connector']} ".join(stops)
        parts.append(f"{label} {day_no}, {date_text}: {joined}.")
    parts.append(snippets["sendoff"])
    return " ".join(parts)


def build_narration_prompt(itinerary: dict, catalog, language: str) -> str:
    """Fact sheet for the model: one VISIT line per stop, nothing else."""
    lines = ["Narrate this trip plan in a warm aunt-like tone. "
             "Mention every stop exactly once; invent nothing."]
    for day in itinerary["days"]:
        lines.append(f"date: {day['date']}")
        for visit in day["visits"]:
            poi = catalog.get(visit["poi_id"])
            name = poi.name if poi else visit.get("name", visit["poi_id"])
            lines.append(f"{NARRATION_MARKER} {name} | {_fmt_time(visit['arrival'])}"
                         f"-{_fmt_time(visit['departure'])}")
    lines.append(f"language: {language}")
    return "\n".join(lines)


def narrate_itinerary(itinerary: dict, catalog, persona: PersonaProfile,
                      language: str, provider, allowed_extra=(),
                      temperature: float = 0.7) -> str:
    """Persona narration, grounding-verified with template fallback."""
    if not any(day["visits"] for day in itinerary["days"]):
        return template_narration(itinerary, catalog, persona, language)
    allowed = set(_visit_names(itinerary, catalog)) | {persona.name} | set(allowed_extra)
    prompt = build_narration_prompt(itinerary, catalog, language)
    request = CompletionRequest(system="", messages=[("user", prompt)],
                                temperature=temperature, language=language)
    for attempt in range(2):
        try:
            text = provider.complete(request)
        except ProviderError:
            logger.warning("narration provider failed, using template")
            break
        report = verify_grounding(text, allowed)
        if report.ok:
            return text
        logger.info("narration attempt %d had %d ungrounded mention(s)",
                    attempt + 1, len(report.ungrounded))
        corrective = (prompt + "\nOnly mention the stops listed above, "
                               "no other proper names.")
        request = CompletionRequest(system="", messages=[("user", corrective)],
                                    temperature=0.0, language=language)
    return template_narration(itinerary, catalog, persona, language)
