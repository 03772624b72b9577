from .models import Visit, DaySchedule, Itinerary, PlanDiagnostics
from .scoring import score_poi, poi_eligible
from .solver import plan, replan
from .oracle import brute_force_plan
from .validation import validate

__all__ = [
    "Visit", "DaySchedule", "Itinerary", "PlanDiagnostics",
    "score_poi", "poi_eligible", "plan", "replan", "brute_force_plan", "validate",
]
