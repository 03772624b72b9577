"""Deterministic travel-time model: great-circle distance at fixed mode speeds.

A live routing provider can sit behind places_lookup; itinerary math stays
reproducible by using this model everywhere tests run.
"""

from __future__ import annotations

import math

from ..errors import ValidationError
from .models import GeoPoint, Poi, TravelMatrix

EARTH_RADIUS_KM = 6371.0

MODE_SPEED_KMH = {"walk": 4.5, "drive": 40.0}


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    lat1, lon1 = math.radians(a.lat), math.radians(a.lon)
    lat2, lon2 = math.radians(b.lat), math.radians(b.lon)
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))


def travel_time(a: GeoPoint, b: GeoPoint, mode: str = "walk",
                speeds: dict | None = None) -> int:
    """Minutes between two points, rounded up. Zero exactly for identical points."""
    if a.lat == b.lat and a.lon == b.lon:
        return 0
    table = speeds or MODE_SPEED_KMH
    if mode not in table:
        raise ValidationError("mode", f"unknown travel mode {mode!r}")
    km = haversine_km(a, b)
    return math.ceil(km / table[mode] * 60.0)


def build_matrix(pois: list, mode: str = "walk", speeds: dict | None = None) -> TravelMatrix:
    """Pairwise travel-time matrix over the given POIs."""
    if not pois:
        raise ValidationError("pois", "at least one POI is required")
    n = len(pois)
    minutes = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            t = travel_time(pois[i].position, pois[j].position, mode, speeds)
            minutes[i][j] = t
            minutes[j][i] = t
    return TravelMatrix([p.id for p in pois], minutes, mode).validate()
