"""Places provider abstraction: live HTTP lookup or offline canned fixtures.

Which one runs is configuration, so the full test suite stays offline.
"""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path

import requests

from ..errors import ProviderError
from ..textutil import fold
from .models import GeoPoint, OpeningHours, Poi

logger = logging.getLogger(__name__)

# visit minutes assumed when the provider gives none, by first matching type
DEFAULT_DURATIONS = {
    "museum": 90,
    "church": 45,
    "restaurant": 90,
    "park": 60,
    "castle": 90,
}
FALLBACK_DURATION = 60


def poi_from_provider_record(record: dict, provider_id: str, destination: str = "") -> Poi:
    """Map one provider result to a Poi. Raises on unmappable records."""
    loc = record["geometry"]["location"]
    types = [t for t in record.get("types", []) if t not in ("point_of_interest", "establishment")]
    duration = FALLBACK_DURATION
    for t in types:
        if t in DEFAULT_DURATIONS:
            duration = DEFAULT_DURATIONS[t]
            break
    price_level = record.get("price_level", 0)
    hours = OpeningHours.always_open()
    periods = record.get("opening_hours", {}).get("periods")
    if periods:
        # provider weekday 0 = Sunday; ours 0 = Monday
        per_day: list = [[] for _ in range(7)]
        for period in periods:
            day = (int(period["open"]["day"]) - 1) % 7
            open_m = _hhmm_to_minutes(period["open"]["time"])
            close_m = _hhmm_to_minutes(period["close"]["time"]) if "close" in period else 1440
            if open_m < close_m:
                per_day[day].append((open_m, close_m))
        for day in per_day:
            day.sort()
        if any(per_day):
            for day in per_day:
                if not day:
                    day.append((0, 0))  # placeholder removed below
            per_day = [[iv for iv in day if iv != (0, 0)] for day in per_day]
        hours = OpeningHours.from_lists(per_day) if any(per_day) else OpeningHours.always_open()
    return Poi(
        id=str(record["place_id"]),
        name=str(record["name"]),
        destination=destination or str(record.get("vicinity", "")),
        category_tags=frozenset(types) if types else frozenset(["attraction"]),
        position=GeoPoint(float(loc["lat"]), float(loc["lng"])),
        hours=hours,
        visit_duration=duration,
        cost_per_person=float(price_level) * 10.0,
        description=str(record.get("editorial_summary", {}).get("overview", "")),
        source_ref=provider_id,
    ).validate()


def _hhmm_to_minutes(hhmm: str) -> int:
    return int(hhmm[:2]) * 60 + int(hhmm[2:])


def parse_places_payload(payload: dict, provider_id: str, destination: str = "") -> list:
    """Normalize a provider response; unmappable records are skipped with a warning."""
    pois = []
    for record in payload.get("results", []):
        try:
            pois.append(poi_from_provider_record(record, provider_id, destination))
        except (KeyError, TypeError, ValueError) as exc:
            logger.warning("skipping unmappable places record %r: %s", record.get("name"), exc)
    return pois


class FixturePlacesProvider:
    """Canned results keyed by folded query text, loaded from a JSON file."""

    provider_id = "fixture"

    def __init__(self, fixture_path: str | Path):
        with open(fixture_path, encoding="utf-8") as fh:
            raw = json.load(fh)
        self._by_query = {fold(query): payload for query, payload in raw.items()}
        self._cache: dict = {}

    def lookup(self, query: str, near: GeoPoint) -> list:
        key = fold(query)
        if key in self._cache:
            return self._cache[key]
        payload = self._by_query.get(key, {"results": []})
        pois = parse_places_payload(payload, self.provider_id)
        self._cache[key] = pois
        return pois


class HttpPlacesProvider:
    """Live provider: HTTP GET with query/location, JSON response."""

    def __init__(self, base_url: str, api_key_env: str = "", timeout: float = 15.0,
                 provider_id: str = "places-http"):
        self.base_url = base_url.rstrip("/")
        self.api_key = os.environ.get(api_key_env, "") if api_key_env else ""
        self.timeout = timeout
        self.provider_id = provider_id

    def lookup(self, query: str, near: GeoPoint) -> list:
        params = {"query": query, "location": f"{near.lat},{near.lon}"}
        if self.api_key:
            params["key"] = self.api_key
        try:
            response = requests.get(self.base_url, params=params, timeout=self.timeout)
            response.raise_for_status()
        except requests.RequestException as exc:
            raise ProviderError(f"places lookup failed: {exc}", retryable=True) from exc
        return parse_places_payload(response.json(), self.provider_id)
