"""Dialogue domain types: the trip request slots and per-session state."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from datetime import date as Date

from ..errors import ValidationError

SLOT_ORDER = ("destination", "dates", "party", "preferences", "budget")


class Phase(str, enum.Enum):
    COLLECTING = "collecting"
    PROPOSING = "proposing"
    REFINING = "refining"
    CLOSED = "closed"


@dataclass
class TripRequest:
    """The five dialogue slots plus restrictions and pace.

    Slots start as None and fill as the conversation progresses;
    ``is_complete`` gates the planning phase.
    """

    destination: str | None = None
    date_range: tuple | None = None          # (start: Date, end: Date)
    party: tuple | None = None               # (adults, children)
    preference_weights: dict | None = None   # tag -> weight in [0, 1]
    budget_total: float | None = None
    restrictions: frozenset = frozenset()
    pace: str = "normal"

    def filled_slots(self) -> set:
        filled = set()
        if self.destination:
            filled.add("destination")
        if self.date_range is not None:
            filled.add("dates")
        if self.party is not None:
            filled.add("party")
        if self.preference_weights is not None:
            filled.add("preferences")
        if self.budget_total is not None:
            filled.add("budget")
        return filled

    def is_complete(self) -> bool:
        return self.filled_slots() == set(SLOT_ORDER)

    def validate(self) -> "TripRequest":
        if self.date_range is not None:
            start, end = self.date_range
            if end < start:
                raise ValidationError("date_range", f"end {end} before start {start}")
        if self.party is not None:
            adults, children = self.party
            if adults < 1:
                raise ValidationError("party", "at least one adult required")
            if children < 0:
                raise ValidationError("party", "children must be >= 0")
        if self.budget_total is not None and self.budget_total < 0:
            raise ValidationError("budget_total", "must be >= 0")
        if self.preference_weights is not None:
            for tag, weight in self.preference_weights.items():
                if not 0.0 <= weight <= 1.0:
                    raise ValidationError("preference_weights", f"{tag}={weight} outside [0, 1]")
        if self.pace not in ("relaxed", "normal", "intense"):
            raise ValidationError("pace", f"unknown pace {self.pace!r}")
        return self

    @property
    def party_size(self) -> int:
        adults, children = self.party if self.party else (1, 0)
        return adults + children

    def merged(self, updates: dict) -> "TripRequest":
        """A copy with slot updates applied; validated before being returned."""
        return replace(self, **updates).validate()

    def to_dict(self) -> dict:
        return {
            "destination": self.destination,
            "date_range": ([d.isoformat() for d in self.date_range]
                           if self.date_range else None),
            "party": list(self.party) if self.party else None,
            "preference_weights": dict(self.preference_weights)
                                  if self.preference_weights is not None else None,
            "budget_total": self.budget_total,
            "restrictions": sorted(self.restrictions),
            "pace": self.pace,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TripRequest":
        date_range = None
        if data.get("date_range"):
            start, end = data["date_range"]
            date_range = (Date.fromisoformat(start), Date.fromisoformat(end))
        return cls(
            destination=data.get("destination"),
            date_range=date_range,
            party=tuple(data["party"]) if data.get("party") else None,
            preference_weights=data.get("preference_weights"),
            budget_total=data.get("budget_total"),
            restrictions=frozenset(data.get("restrictions", [])),
            pace=data.get("pace", "normal"),
        ).validate()


@dataclass
class FeedbackEvent:
    target: str                 # poi id or "day:<index>"
    verdict: str | int          # "accept" | "reject" | rating 1..5
    timestamp: str

    def validate(self) -> "FeedbackEvent":
        if isinstance(self.verdict, bool) or (
                isinstance(self.verdict, int) and not 1 <= self.verdict <= 5):
            raise ValidationError("verdict", f"rating {self.verdict} outside 1..5")
        if isinstance(self.verdict, str) and self.verdict not in ("accept", "reject"):
            raise ValidationError("verdict", f"unknown verdict {self.verdict!r}")
        return self

    def to_dict(self) -> dict:
        return {"target": self.target, "verdict": self.verdict, "timestamp": self.timestamp}

    @classmethod
    def from_dict(cls, data: dict) -> "FeedbackEvent":
        return cls(data["target"], data["verdict"], data["timestamp"]).validate()


@dataclass
class PromptSpec:
    question: str
    expected_slot: str | None
    quick_replies: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "expected_slot": self.expected_slot,
            "quick_replies": list(self.quick_replies),
        }


@dataclass
class SessionState:
    session_id: str
    language: str
    phase: Phase = Phase.COLLECTING
    request: TripRequest = field(default_factory=TripRequest)
    pending_slot: str | None = "destination"
    transcript: list = field(default_factory=list)   # (role, text, timestamp)
    current_itinerary: dict | None = None            # serialized Itinerary
    feedback: list = field(default_factory=list)
    locked_poi_ids: set = field(default_factory=set)
    dropped_poi_ids: set = field(default_factory=set)
    narration: str = ""

    def append(self, role: str, text: str, timestamp: str) -> None:
        self.transcript.append((role, text, timestamp))

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "language": self.language,
            "phase": self.phase.value,
            "request": self.request.to_dict(),
            "pending_slot": self.pending_slot,
            "transcript": [list(entry) for entry in self.transcript],
            "current_itinerary": self.current_itinerary,
            "feedback": [event.to_dict() for event in self.feedback],
            "locked_poi_ids": sorted(self.locked_poi_ids),
            "dropped_poi_ids": sorted(self.dropped_poi_ids),
            "narration": self.narration,
        }
