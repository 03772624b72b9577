"""Itinerary result types."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date as Date, timedelta


@dataclass
class Visit:
    poi_id: str
    arrival: int     # minutes from midnight
    departure: int
    cost_for_party: float

    def to_dict(self, name: str = "") -> dict:
        out = {
            "poi_id": self.poi_id,
            "arrival": self.arrival,
            "departure": self.departure,
            "cost_for_party": self.cost_for_party,
        }
        if name:
            out["name"] = name
        return out


@dataclass
class TravelLeg:
    from_poi: str
    to_poi: str
    minutes: int

    def to_dict(self) -> dict:
        return {"from": self.from_poi, "to": self.to_poi, "minutes": self.minutes}


@dataclass
class DaySchedule:
    date: Date
    visits: list = field(default_factory=list)
    legs: list = field(default_factory=list)
    window: tuple = (540, 1140)

    @property
    def weekday(self) -> int:
        return self.date.weekday()

    def to_dict(self, names: dict | None = None) -> dict:
        names = names or {}
        return {
            "date": self.date.isoformat(),
            "window": list(self.window),
            "visits": [v.to_dict(names.get(v.poi_id, "")) for v in self.visits],
            "legs": [leg.to_dict() for leg in self.legs],
        }


@dataclass
class Itinerary:
    days: list = field(default_factory=list)
    total_score: float = 0.0
    total_cost: float = 0.0
    total_travel_minutes: int = 0

    def poi_ids(self) -> list:
        return [v.poi_id for day in self.days for v in day.visits]

    def is_empty(self) -> bool:
        return not any(day.visits for day in self.days)

    def to_dict(self, names: dict | None = None) -> dict:
        return {
            "days": [day.to_dict(names) for day in self.days],
            "totals": {
                "score": self.total_score,
                "cost": self.total_cost,
                "travel_minutes": self.total_travel_minutes,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Itinerary":
        days = []
        for day_data in data["days"]:
            day = DaySchedule(
                date=Date.fromisoformat(day_data["date"]),
                visits=[Visit(v["poi_id"], v["arrival"], v["departure"], v["cost_for_party"])
                        for v in day_data["visits"]],
                legs=[TravelLeg(l["from"], l["to"], l["minutes"]) for l in day_data["legs"]],
                window=tuple(day_data["window"]),
            )
            days.append(day)
        totals = data.get("totals", {})
        return cls(days,
                   totals.get("score", 0.0),
                   totals.get("cost", 0.0),
                   totals.get("travel_minutes", 0))


@dataclass
class PlanDiagnostics:
    iterations: int = 0
    improvements: int = 0
    rejections: dict = field(default_factory=dict)

    def reject(self, reason: str) -> None:
        self.rejections[reason] = self.rejections.get(reason, 0) + 1

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "improvements": self.improvements,
            "rejections": dict(sorted(self.rejections.items())),
        }


def dates_in_range(start: Date, end: Date) -> list:
    """Every calendar date from start to end inclusive."""
    return [start + timedelta(days=i) for i in range((end - start).days + 1)]
