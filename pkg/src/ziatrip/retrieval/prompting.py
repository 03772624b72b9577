"""Prompt assembly: retrieved context plus live POI facts, under a token budget."""

from __future__ import annotations

from ..textutil import tokens

DEFAULT_PREAMBLE = (
    "You are a warm, knowledgeable local guide. Answer using only the numbered "
    "context blocks and the listed points of interest; cite block markers like [1].")


def _poi_fact_line(poi) -> str:
    hours_note = "always open" if all(
        day == ((0, 1440),) for day in poi.hours.intervals) else "limited hours"
    return (f"- {poi.name} ({', '.join(sorted(poi.category_tags))}) in {poi.destination}: "
            f"{poi.visit_duration} min visit, {poi.cost_per_person:g} per person, {hours_note}.")


def augment_prompt(question: str, hits: list, live_pois: list, budget_tokens: int,
                   preamble: str = DEFAULT_PREAMBLE) -> str:
    """Compose the retrieval-augmented prompt.

    Context blocks are added in hit-score order until their combined token
    count would exceed ``budget_tokens``; every block carries its source
    marker so answers can cite it.
    """
    parts = [preamble, ""]
    used = 0
    included = 0
    for hit in sorted(hits, key=lambda h: (-h.score, h.chunk_id)):
        text = hit.metadata.get("text", "")
        block_tokens = len(tokens(text))
        if used + block_tokens > budget_tokens:
            break
        included += 1
        used += block_tokens
        source = hit.metadata.get("uri") or hit.metadata.get("source", "unknown")
        parts.append(f"[{included}] (source: {source})")
        parts.append(text)
        parts.append("")
    if live_pois:
        parts.append("Points of interest:")
        for poi in live_pois:
            parts.append(_poi_fact_line(poi))
        parts.append("")
    parts.append(f"Question: {question}")
    return "\n".join(parts)
