"""Independent feasibility audit of an itinerary against catalog and matrix."""

from __future__ import annotations

from ..dialogue.models import TripRequest
from ..pois.models import TravelMatrix
from .models import Itinerary, dates_in_range
from .scoring import poi_eligible, score_poi


def validate(itinerary: Itinerary, request: TripRequest, catalog,
             matrix: TravelMatrix) -> list:
    """Every violated rule as "rule: detail"; an empty list means feasible."""
    violations = []
    expected_dates = dates_in_range(*request.date_range) if request.date_range else []
    if [d.date for d in itinerary.days] != expected_dates:
        violations.append("date_coverage: day list does not match the request's date range")

    party = request.party_size
    id_to_row = {pid: i for i, pid in enumerate(matrix.poi_ids)}
    seen = set()
    total_cost = 0.0
    total_travel = 0
    total_score = 0.0

    for day in itinerary.days:
        weekday = day.date.weekday()
        ws, we = day.window
        prev_visit = None
        for pos, visit in enumerate(day.visits):
            poi = catalog.get(visit.poi_id)
            if poi is None:
                violations.append(f"unknown_poi: {visit.poi_id} not in catalog")
                continue
            if visit.poi_id in seen:
                violations.append(f"uniqueness: {visit.poi_id} appears more than once")
            seen.add(visit.poi_id)

            if visit.departure - visit.arrival != poi.visit_duration:
                violations.append(
                    f"duration: {visit.poi_id} scheduled "
                    f"{visit.departure - visit.arrival} != {poi.visit_duration} min")
            if visit.arrival < ws or visit.departure > we:
                violations.append(f"day_window: {visit.poi_id} outside {ws}..{we}")
            if not any(open_m <= visit.arrival and visit.departure <= close_m
                       for open_m, close_m in poi.hours.for_weekday(weekday)):
                violations.append(
                    f"opening_hours: {visit.poi_id} not open {visit.arrival}..{visit.departure} "
                    f"on weekday {weekday}")
            if not poi_eligible(poi, request.restrictions):
                violations.append(f"restricted: {visit.poi_id} conflicts with a restriction")

            expected_cost = poi.cost_per_person * party
            if abs(visit.cost_for_party - expected_cost) > 1e-6:
                violations.append(
                    f"cost: {visit.poi_id} charged {visit.cost_for_party} != {expected_cost}")
            total_cost += visit.cost_for_party
            total_score += score_poi(poi, request.preference_weights or {},
                                     request.restrictions)

            if prev_visit is not None:
                a = id_to_row.get(prev_visit.poi_id)
                b = id_to_row.get(visit.poi_id)
                if a is None or b is None:
                    violations.append(
                        f"matrix_coverage: missing travel time "
                        f"{prev_visit.poi_id}->{visit.poi_id}")
                else:
                    needed = matrix.minutes[a][b]
                    if visit.arrival < prev_visit.departure + needed:
                        violations.append(
                            f"travel_separation: {prev_visit.poi_id}->{visit.poi_id} "
                            f"needs {needed} min")
                    total_travel += needed
            prev_visit = visit

        expected_legs = [(day.visits[i].poi_id, day.visits[i + 1].poi_id)
                         for i in range(len(day.visits) - 1)]
        actual_legs = [(leg.from_poi, leg.to_poi) for leg in day.legs]
        if expected_legs != actual_legs:
            violations.append(f"legs: day {day.date.isoformat()} legs do not match visits")

    if request.budget_total is not None and total_cost > request.budget_total + 1e-6:
        violations.append(f"budget: total cost {total_cost} exceeds {request.budget_total}")
    if abs(itinerary.total_cost - total_cost) > 1e-6:
        violations.append(f"totals: cost {itinerary.total_cost} != recomputed {total_cost}")
    if itinerary.total_travel_minutes != total_travel:
        violations.append(
            f"totals: travel {itinerary.total_travel_minutes} != recomputed {total_travel}")
    if abs(itinerary.total_score - total_score) > 1e-6:
        violations.append(f"totals: score {itinerary.total_score} != recomputed {total_score}")
    return violations
