"""Exhaustive reference planner for small instances.

Enumerates every assignment of ordered POI subsets to days (with prefix
feasibility pruning) and returns the lexicographic optimum: maximum score,
then minimum travel, then a canonical sequence tie-break. Scheduling here is
written independently of the heuristic solver on purpose: it is the oracle
the solver is judged against.
"""

from __future__ import annotations

from ..config import PlannerConfig
from ..errors import ValidationError
from ..dialogue.models import TripRequest
from ..pois.models import TravelMatrix
from .models import DaySchedule, Itinerary, TravelLeg, Visit, dates_in_range
from .scoring import poi_eligible, score_poi

ENUMERATION_BOUND = 8


def _earliest_times(seq, weekday, ws, we, durations, hours, tt):
    """Arrival times for a fixed visit order, earliest-feasible; None if impossible."""
    times = []
    clock = ws
    prev = None
    for poi_idx in seq:
        earliest = clock if prev is None else clock + tt[prev][poi_idx]
        duration = durations[poi_idx]
        chosen = None
        for open_m, close_m in hours[poi_idx][weekday]:
            arrival = max(earliest, open_m)
            if arrival + duration <= close_m and arrival + duration <= we:
                chosen = arrival
                break
        if chosen is None:
            return None
        times.append(chosen)
        clock = chosen + duration
        prev = poi_idx
    return times


def brute_force_plan(request: TripRequest, candidates: list, matrix: TravelMatrix,
                     cfg: PlannerConfig | None = None,
                     locked_by_day: list | None = None,
                     drops: frozenset = frozenset()) -> Itinerary:
    """Optimal itinerary by exhaustive enumeration (candidate count <= 8)."""
    cfg = cfg or PlannerConfig()
    request.validate()
    if len(candidates) > ENUMERATION_BOUND:
        raise ValidationError("candidates",
                              f"{len(candidates)} exceeds enumeration bound {ENUMERATION_BOUND}")
    dates = dates_in_range(*request.date_range)
    cap = cfg.pace_caps.get(request.pace, cfg.pace_caps["normal"])
    party = request.party_size

    pois = [p for p in sorted(candidates, key=lambda p: p.id) if p.id not in drops]
    scores = []
    keep = []
    for poi in pois:
        if not poi_eligible(poi, request.restrictions):
            continue
        s = score_poi(poi, request.preference_weights, request.restrictions)
        if s <= 0.0:
            # zero-score visits can never improve a (max score, min travel) objective
            continue
        keep.append(poi)
        scores.append(s)
    pois = keep

    n = len(pois)
    id_to_row = {pid: i for i, pid in enumerate(matrix.poi_ids)}
    tt = [[matrix.minutes[id_to_row[a.id]][id_to_row[b.id]] for b in pois] for a in pois]
    durations = [p.visit_duration for p in pois]
    hours = [p.hours.intervals for p in pois]
    costs = [p.cost_per_person * party for p in pois]
    budget = request.budget_total

    lock_day_of = {}
    lock_order = [[] for _ in dates]
    if locked_by_day:
        for d, ids in enumerate(locked_by_day):
            for pid in ids:
                for i, poi in enumerate(pois):
                    if poi.id == pid:
                        lock_day_of[i] = d
                        lock_order[d].append(i)

    day_specs = [(date.weekday(), cfg.day_start, cfg.day_end) for date in dates]
    best = {"key": None, "seqs": None}

    def consider(seqs, score, travel):
        canonical = tuple(tuple(pois[i].id for i in seq) for seq in seqs)
        key = (-score, travel, canonical)
        if best["key"] is None or key < best["key"]:
            best["key"] = key
            best["seqs"] = [list(seq) for seq in seqs]

    def day_options(d, available):
        """All feasible ordered sequences for day d, honoring locks in order."""
        weekday, ws, we = day_specs[d]
        locked = lock_order[d]
        results = []

        def extend(seq, used, travel, lock_ptr):
            if lock_ptr == len(locked):
                results.append((list(seq), travel))
            if len(seq) >= cap:
                return
            for i in available:
                if i in used:
                    continue
                d_lock = lock_day_of.get(i)
                if d_lock is not None:
                    if d_lock != d or (lock_ptr < len(locked) and i != locked[lock_ptr]):
                        continue
                    if lock_ptr >= len(locked):
                        continue
                new_seq = seq + [i]
                if _earliest_times(new_seq, weekday, ws, we, durations, hours, tt) is None:
                    continue
                leg = 0 if not seq else tt[seq[-1]][i]
                extend(new_seq, used | {i}, travel + leg,
                       lock_ptr + 1 if lock_day_of.get(i) == d else lock_ptr)

        extend([], set(), 0, 0)
        return results

    def recurse(d, remaining, spent, seqs, score, travel):
        if d == len(dates):
            consider(seqs, score, travel)
            return
        for seq, day_travel in day_options(d, remaining):
            cost = sum(costs[i] for i in seq)
            if spent + cost > budget:
                continue
            recurse(d + 1,
                    remaining - set(seq),
                    spent + cost,
                    seqs + [seq],
                    score + sum(scores[i] for i in seq),
                    travel + day_travel)

    recurse(0, set(range(n)), 0.0, [], 0.0, 0)

    seqs = best["seqs"] if best["seqs"] is not None else [[] for _ in dates]
    days_out = []
    total_score = 0.0
    total_cost = 0.0
    total_travel = 0
    for d, date in enumerate(dates):
        weekday, ws, we = day_specs[d]
        seq = seqs[d]
        times = _earliest_times(seq, weekday, ws, we, durations, hours, tt) or []
        visits = []
        legs = []
        for pos, i in enumerate(seq):
            visits.append(Visit(pois[i].id, times[pos], times[pos] + durations[i], costs[i]))
            total_score += scores[i]
            total_cost += costs[i]
            if pos > 0:
                prev = seq[pos - 1]
                legs.append(TravelLeg(pois[prev].id, pois[i].id, tt[prev][i]))
                total_travel += tt[prev][i]
        days_out.append(DaySchedule(date=date, visits=visits, legs=legs, window=(ws, we)))
    return Itinerary(days_out, total_score, total_cost, total_travel)
