"""Domain types for points of interest."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError

WEEKDAYS = ("mon", "tue", "wed", "thu", "fri", "sat", "sun")
MINUTES_PER_DAY = 1440


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def validate(self) -> "GeoPoint":
        if not -90.0 <= self.lat <= 90.0:
            raise ValidationError("lat", f"{self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise ValidationError("lon", f"{self.lon} outside [-180, 180]")
        return self


@dataclass(frozen=True)
class OpeningHours:
    """Per-weekday open intervals, minutes from midnight. Index 0 = Monday."""

    intervals: tuple  # 7-tuple of tuples of (open, close)

    @classmethod
    def always_open(cls) -> "OpeningHours":
        return cls(tuple(((0, MINUTES_PER_DAY),) for _ in range(7)))

    @classmethod
    def from_lists(cls, per_day: list) -> "OpeningHours":
        if len(per_day) != 7:
            raise ValidationError("hours", f"expected 7 weekday entries, got {len(per_day)}")
        return cls(tuple(tuple((int(o), int(c)) for o, c in day) for day in per_day)).validate()

    def validate(self) -> "OpeningHours":
        for day_idx, day in enumerate(self.intervals):
            prev_close = -1
            for open_m, close_m in day:
                if not (0 <= open_m < close_m <= MINUTES_PER_DAY):
                    raise ValidationError(
                        "hours", f"{WEEKDAYS[day_idx]} interval ({open_m}, {close_m}) invalid")
                if open_m < prev_close:
                    raise ValidationError(
                        "hours", f"{WEEKDAYS[day_idx]} intervals overlap or are unsorted")
                prev_close = close_m
        return self

    def for_weekday(self, weekday: int) -> tuple:
        """Intervals for a Python date.weekday() value (0 = Monday)."""
        return self.intervals[weekday]

    def to_lists(self) -> list:
        return [[list(iv) for iv in day] for day in self.intervals]


@dataclass
class Poi:
    id: str
    name: str
    destination: str
    category_tags: frozenset
    position: GeoPoint
    hours: OpeningHours
    visit_duration: int          # minutes
    cost_per_person: float       # currency units
    description: str = ""
    source_ref: str = ""

    def validate(self) -> "Poi":
        if not self.id:
            raise ValidationError("id", "must be a non-empty string")
        if not self.name:
            raise ValidationError("name", "must be a non-empty string")
        if not self.category_tags:
            raise ValidationError("category_tags", "must be non-empty")
        self.position.validate()
        self.hours.validate()
        if self.visit_duration <= 0:
            raise ValidationError("visit_duration", f"{self.visit_duration} must be > 0")
        if self.cost_per_person < 0:
            raise ValidationError("cost_per_person", f"{self.cost_per_person} must be >= 0")
        return self

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "destination": self.destination,
            "category_tags": sorted(self.category_tags),
            "position": {"lat": self.position.lat, "lon": self.position.lon},
            "hours": self.hours.to_lists(),
            "visit_duration": self.visit_duration,
            "cost_per_person": self.cost_per_person,
            "description": self.description,
            "source_ref": self.source_ref,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Poi":
        """Build and validate a Poi from a JSON record; unknown fields are ignored."""
        try:
            poi = cls(
                id=str(data["id"]),
                name=str(data["name"]),
                destination=str(data.get("destination", "")),
                category_tags=frozenset(data.get("category_tags", [])),
                position=GeoPoint(float(data["position"]["lat"]), float(data["position"]["lon"])),
                hours=(OpeningHours.from_lists(data["hours"]) if data.get("hours")
                       else OpeningHours.always_open()),
                visit_duration=int(data["visit_duration"]),
                cost_per_person=float(data.get("cost_per_person", 0.0)),
                description=str(data.get("description", "")),
                source_ref=str(data.get("source_ref", "")),
            )
        except KeyError as exc:
            raise ValidationError(str(exc.args[0]), "missing required field") from exc
        return poi.validate()


@dataclass
class TravelMatrix:
    poi_ids: list
    minutes: list  # square list-of-lists
    mode: str

    def validate(self) -> "TravelMatrix":
        n = len(self.poi_ids)
        if len(self.minutes) != n or any(len(row) != n for row in self.minutes):
            raise ValidationError("minutes", "matrix must be square over poi_ids")
        for i in range(n):
            if self.minutes[i][i] != 0:
                raise ValidationError("minutes", f"diagonal entry [{i}][{i}] must be 0")
            for j in range(n):
                if self.minutes[i][j] < 0:
                    raise ValidationError("minutes", f"entry [{i}][{j}] must be >= 0")
                if self.minutes[i][j] != self.minutes[j][i]:
                    raise ValidationError("minutes", f"entry [{i}][{j}] breaks symmetry")
        return self

    def index_of(self, poi_id: str) -> int:
        return self.poi_ids.index(poi_id)

    def to_dict(self) -> dict:
        return {"poi_ids": list(self.poi_ids), "minutes": self.minutes, "mode": self.mode}

    @classmethod
    def from_dict(cls, data: dict) -> "TravelMatrix":
        return cls(list(data["poi_ids"]),
                   [list(row) for row in data["minutes"]],
                   data.get("mode", "walk")).validate()
