"""Itinerary construction: greedy best-insertion plus local search.

The problem is team orienteering with time windows and a shared budget:
pick and order a subset of POIs across the stay's days to maximize
preference score, then minimize travel, subject to opening hours, the
daily window, a per-day visit cap (pace) and the trip budget.

Everything is deterministic: fixed tie-breaks, no randomness.
"""

from __future__ import annotations

from ..config import PlannerConfig
from ..errors import ValidationError
from ..dialogue.models import TripRequest
from ..pois.models import TravelMatrix
from .models import DaySchedule, Itinerary, PlanDiagnostics, TravelLeg, Visit, dates_in_range
from .scoring import is_food_poi, poi_eligible, score_poi

MEAL_WINDOW = (750, 870)  # 12:30 .. 14:30 arrival window for the lunch stop

# drop-and-refill is quadratic in selected visits; above these candidate
# counts the cheaper moves carry the search
DROP_REFILL_LIMIT = 16
PAIR_DROP_LIMIT = 8


class _Cand:
    __slots__ = ("idx", "poi_id", "score", "raw_score", "dur", "cost", "ivs", "is_meal")

    def __init__(self, idx, poi_id, score, raw_score, dur, cost, ivs, is_meal):
        self.idx = idx
        self.poi_id = poi_id
        self.score = score          # selection score (may include similarity bonus)
        self.raw_score = raw_score  # reported score
        self.dur = dur
        self.cost = cost
        self.ivs = ivs              # 7-tuple of interval tuples
        self.is_meal = is_meal


def _schedule(seq, weekday, ws, we, cands, tt, pins=None):
    """Earliest-feasible times for a day's sequence, or None.

    ``pins`` optionally maps a position to (not_before, start_by) bounds on
    that visit's arrival. Returns (arrival times, total travel minutes).
    """
    times = []
    travel = 0
    t = ws
    prev = -1
    for pos, idx in enumerate(seq):
        cand = cands[idx]
        if prev < 0:
            a0 = ws
        else:
            leg = tt[prev][idx]
            travel += leg
            a0 = t + leg
        start_by = we
        if pins is not None and pos in pins:
            nb, sb = pins[pos]
            if nb > a0:
                a0 = nb
            start_by = sb
        dur = cand.dur
        start = -1
        for open_m, close_m in cand.ivs[weekday]:
            s = a0 if a0 > open_m else open_m
            if s + dur <= close_m and s + dur <= we and s <= start_by:
                start = s
                break
        if start < 0:
            return None
        times.append(start)
        t = start + dur
        prev = idx
    return times, travel


def _day_travel(seq, tt):
    total = 0
    for i in range(len(seq) - 1):
        total += tt[seq[i]][seq[i + 1]]
    return total


class _State:
    """Mutable solver state: one sequence of candidate indexes per day."""

    def __init__(self, days, cands, tt, budget, cap):
        self.days = days            # list of (weekday, ws, we)
        self.seqs = [[] for _ in days]
        self.locked = [[] for _ in days]   # parallel bools
        self.travels = [0] * len(days)
        self.cands = cands
        self.tt = tt
        self.budget = budget
        self.cap = cap
        self.spent = 0.0
        self.placed = set()

    def total_travel(self):
        return sum(self.travels)

    def total_score(self):
        return sum(self.cands[idx].score for seq in self.seqs for idx in seq)

    def feasible_positions(self, cand, d, pins_window=None):
        """Best (min added travel) feasible insertion of cand into day d.

        Returns (dtravel, pos) or None. ``pins_window`` optionally bounds the
        new visit's arrival (meal attempts).
        """
        seq = self.seqs[d]
        if len(seq) + 1 > self.cap:
            return None
        weekday, ws, we = self.days[d]
        best = None
        base_travel = self.travels[d]
        for pos in range(len(seq) + 1):
            new_seq = seq[:pos] + [cand.idx] + seq[pos:]
            pins = {pos: pins_window} if pins_window else None
            result = _schedule(new_seq, weekday, ws, we, self.cands, self.tt, pins)
            if result is None:
                continue
            dtravel = result[1] - base_travel
            if best is None or dtravel < best[0]:
                best = (dtravel, pos)
        return best

    def insert(self, cand, d, pos):
        self.seqs[d].insert(pos, cand.idx)
        self.locked[d].insert(pos, False)
        self.travels[d] = _day_travel(self.seqs[d], self.tt)
        self.spent += cand.cost
        self.placed.add(cand.idx)

    def remove(self, d, pos):
        idx = self.seqs[d].pop(pos)
        self.locked[d].pop(pos)
        self.travels[d] = _day_travel(self.seqs[d], self.tt)
        self.spent -= self.cands[idx].cost
        self.placed.discard(idx)
        return idx

    def day_feasible(self, d, seq=None):
        weekday, ws, we = self.days[d]
        return _schedule(seq if seq is not None else self.seqs[d],
                         weekday, ws, we, self.cands, self.tt) is not None


def _greedy_fill(state, pool, diag, priority="ratio"):
    """Insert candidates best-first until nothing fits. Returns count.

    Priorities: "ratio" is score/(1 + added travel) — the base rule; "cost"
    divides by (1 + cost) as well, sidestepping budget crowding; "score"
    ignores travel when choosing the candidate, which recovers score-dense
    stops that low-travel orderings paint out of reach.
    """
    best_ins = {}
    for cand in pool:
        for d in range(len(state.days)):
            best_ins[(cand.idx, d)] = state.feasible_positions(cand, d)
    inserted = 0
    while True:
        chosen = None
        chosen_key = None
        for cand in pool:
            if cand.idx in state.placed:
                continue
            if state.spent + cand.cost > state.budget:
                continue
            for d in range(len(state.days)):
                slot = best_ins.get((cand.idx, d))
                if slot is None:
                    continue
                dtravel, pos = slot
                if priority == "score":
                    key = (-cand.score, cand.poi_id, dtravel, d, pos)
                else:
                    ratio = cand.score / (1.0 + dtravel)
                    if priority == "cost":
                        ratio /= 1.0 + cand.cost
                    key = (-ratio, cand.poi_id, d, pos)
                if chosen_key is None or key < chosen_key:
                    chosen_key = key
                    chosen = (cand, d, pos)
        if chosen is None:
            break
        cand, d, pos = chosen
        state.insert(cand, d, pos)
        inserted += 1
        diag.iterations += 1
        for other in pool:
            if other.idx in state.placed:
                continue
            best_ins[(other.idx, d)] = state.feasible_positions(other, d)
    return inserted


def _meal_attempts(state, pool, diag):
    """Try one lunch-window food stop per day before general insertion."""
    meal_pool = [c for c in pool if c.is_meal and c.idx not in state.placed]
    inserted = 0
    if not meal_pool:
        return inserted
    for d in range(len(state.days)):
        if any(state.cands[idx].is_meal for idx in state.seqs[d]):
            continue
        chosen = None
        chosen_key = None
        for cand in meal_pool:
            if cand.idx in state.placed or state.spent + cand.cost > state.budget:
                continue
            slot = state.feasible_positions(cand, d, pins_window=MEAL_WINDOW)
            if slot is None:
                continue
            dtravel, pos = slot
            ratio = cand.score / (1.0 + dtravel)
            key = (-ratio, cand.poi_id, pos)
            if chosen_key is None or key < chosen_key:
                chosen_key = key
                chosen = (cand, pos)
        if chosen is not None:
            cand, pos = chosen
            state.insert(cand, d, pos)
            inserted += 1
            diag.iterations += 1
    return inserted


def _relocate_within_day(state, diag, cap):
    moved = False
    for d in range(len(state.days)):
        seq = state.seqs[d]
        improved = True
        while improved and diag.iterations < cap:
            improved = False
            for i in range(len(seq)):
                if state.locked[d][i]:
                    continue
                for j in range(len(seq)):
                    if j == i:
                        continue
                    new_seq = list(seq)
                    idx = new_seq.pop(i)
                    new_seq.insert(j, idx)
                    new_travel = _day_travel(new_seq, state.tt)
                    if new_travel >= state.travels[d]:
                        continue
                    if not state.day_feasible(d, new_seq):
                        continue
                    flag = state.locked[d].pop(i)
                    state.locked[d].insert(j, flag)
                    state.seqs[d] = new_seq
                    seq = new_seq
                    state.travels[d] = new_travel
                    diag.iterations += 1
                    diag.improvements += 1
                    moved = improved = True
                    break
                if improved:
                    break
    return moved


def _two_opt_within_day(state, diag, cap):
    moved = False
    for d in range(len(state.days)):
        improved = True
        while improved and diag.iterations < cap:
            improved = False
            seq = state.seqs[d]
            n = len(seq)
            for i in range(n - 1):
                for j in range(i + 1, n):
                    if any(state.locked[d][i:j + 1]):
                        continue
                    new_seq = seq[:i] + seq[i:j + 1][::-1] + seq[j + 1:]
                    new_travel = _day_travel(new_seq, state.tt)
                    if new_travel >= state.travels[d]:
                        continue
                    if not state.day_feasible(d, new_seq):
                        continue
                    state.seqs[d] = new_seq
                    state.travels[d] = new_travel
                    diag.iterations += 1
                    diag.improvements += 1
                    moved = improved = True
                    break
                if improved:
                    break
    return moved


def _swap_across_days(state, diag, cap):
    moved = False
    improved = True
    while improved and diag.iterations < cap:
        improved = False
        for d1 in range(len(state.days)):
            for d2 in range(d1 + 1, len(state.days)):
                for i in range(len(state.seqs[d1])):
                    if state.locked[d1][i]:
                        continue
                    for j in range(len(state.seqs[d2])):
                        if state.locked[d2][j]:
                            continue
                        s1 = list(state.seqs[d1])
                        s2 = list(state.seqs[d2])
                        s1[i], s2[j] = s2[j], s1[i]
                        t1 = _day_travel(s1, state.tt)
                        t2 = _day_travel(s2, state.tt)
                        if t1 + t2 >= state.travels[d1] + state.travels[d2]:
                            continue
                        if not (state.day_feasible(d1, s1) and state.day_feasible(d2, s2)):
                            continue
                        state.seqs[d1], state.seqs[d2] = s1, s2
                        state.travels[d1], state.travels[d2] = t1, t2
                        diag.iterations += 1
                        diag.improvements += 1
                        moved = improved = True
                        break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
    return moved


def _relocate_across_days(state, diag, cap):
    moved = False
    improved = True
    while improved and diag.iterations < cap:
        improved = False
        for d1 in range(len(state.days)):
            for i in range(len(state.seqs[d1])):
                if state.locked[d1][i]:
                    continue
                idx = state.seqs[d1][i]
                for d2 in range(len(state.days)):
                    if d2 == d1 or len(state.seqs[d2]) + 1 > state.cap:
                        continue
                    s1 = state.seqs[d1][:i] + state.seqs[d1][i + 1:]
                    t1 = _day_travel(s1, state.tt)
                    for pos in range(len(state.seqs[d2]) + 1):
                        s2 = state.seqs[d2][:pos] + [idx] + state.seqs[d2][pos:]
                        t2 = _day_travel(s2, state.tt)
                        if t1 + t2 >= state.travels[d1] + state.travels[d2]:
                            continue
                        if not (state.day_feasible(d1, s1) and state.day_feasible(d2, s2)):
                            continue
                        state.seqs[d1] = s1
                        state.locked[d1].pop(i)
                        state.seqs[d2] = s2
                        state.locked[d2].insert(pos, False)
                        state.travels[d1], state.travels[d2] = t1, t2
                        diag.iterations += 1
                        diag.improvements += 1
                        moved = improved = True
                        break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
    return moved


def _exchange_with_pool(state, pool, diag, cap):
    """Replace a scheduled visit with an unscheduled candidate when it wins."""
    moved = False
    improved = True
    while improved and diag.iterations < cap:
        improved = False
        for d in range(len(state.days)):
            for i in range(len(state.seqs[d])):
                if state.locked[d][i]:
                    continue
                cur_idx = state.seqs[d][i]
                cur = state.cands[cur_idx]
                for cand in pool:
                    if cand.idx in state.placed:
                        continue
                    if state.spent - cur.cost + cand.cost > state.budget:
                        continue
                    if cand.score < cur.score:
                        continue
                    new_seq = list(state.seqs[d])
                    new_seq[i] = cand.idx
                    new_travel = _day_travel(new_seq, state.tt)
                    if cand.score == cur.score and new_travel >= state.travels[d]:
                        continue
                    if not state.day_feasible(d, new_seq):
                        continue
                    state.seqs[d] = new_seq
                    state.travels[d] = new_travel
                    state.spent += cand.cost - cur.cost
                    state.placed.discard(cur_idx)
                    state.placed.add(cand.idx)
                    diag.iterations += 1
                    diag.improvements += 1
                    moved = improved = True
                    break
                if improved:
                    break
            if improved:
                break
    return moved


def _drop_and_refill(state, pool, diag, cap, priority="ratio", with_pairs=False):
    """Remove one visit (or a pair) and refill greedily; keep winning changes."""
    moved = False
    improved = True
    while improved and diag.iterations < cap:
        improved = False
        before = (-state.total_score(), state.total_travel())
        positions = [(d, i) for d in range(len(state.days))
                     for i in range(len(state.seqs[d]))
                     if not state.locked[d][i]]
        # single drops first, then pairs (pairs free enough budget for one
        # large stop that two cheap ones crowd out)
        trials = [(pos,) for pos in positions]
        if with_pairs:
            trials += [(a, b) for k, a in enumerate(positions) for b in positions[k + 1:]]
        for trial in trials:
            snapshot = _snapshot(state)
            victims = set()
            for d, i in sorted(trial, key=lambda p: (p[0], -p[1])):
                victims.add(state.remove(d, i))
            refill_pool = [c for c in pool if c.idx not in victims]
            victim_pool = [c for c in pool if c.idx in victims]
            scratch = PlanDiagnostics()
            _greedy_fill(state, refill_pool, scratch, priority)
            # victims may still fit around the new backbone
            _greedy_fill(state, victim_pool, scratch, priority)
            after = (-state.total_score(), state.total_travel())
            if after < before:
                diag.iterations += 1
                diag.improvements += 1
                moved = improved = True
                break
            _restore(state, snapshot)
    return moved


def _snapshot(state):
    return ([list(s) for s in state.seqs], [list(l) for l in state.locked],
            list(state.travels), state.spent, set(state.placed))


def _restore(state, snap):
    seqs, locked, travels, spent, placed = snap
    state.seqs = [list(s) for s in seqs]
    state.locked = [list(l) for l in locked]
    state.travels = list(travels)
    state.spent = spent
    state.placed = set(placed)


def _classify_rejections(state, pool, diag):
    for cand in pool:
        if cand.idx in state.placed:
            continue
        if state.spent + cand.cost > state.budget:
            diag.reject("budget")
        elif all(len(seq) >= state.cap for seq in state.seqs):
            diag.reject("pace_cap")
        else:
            diag.reject("time_window")


def _build_itinerary(state, order):
    """Produce the public Itinerary from solver state. Totals use raw scores."""
    days_out = []
    total_score = 0.0
    total_cost = 0.0
    total_travel = 0
    for d, date in enumerate(order):
        weekday, ws, we = state.days[d]
        sched = _schedule(state.seqs[d], weekday, ws, we, state.cands, state.tt)
        visits = []
        legs = []
        if sched is not None and state.seqs[d]:
            times, travel = sched
            total_travel += travel
            for pos, idx in enumerate(state.seqs[d]):
                cand = state.cands[idx]
                visits.append(Visit(cand.poi_id, times[pos], times[pos] + cand.dur,
                                    cand.cost))
                total_score += cand.raw_score
                total_cost += cand.cost
                if pos > 0:
                    prev = state.cands[state.seqs[d][pos - 1]]
                    legs.append(TravelLeg(prev.poi_id, cand.poi_id,
                                          state.tt[prev.idx][idx]))
        days_out.append(DaySchedule(date=date, visits=visits, legs=legs, window=(ws, we)))
    return Itinerary(days_out, total_score, total_cost, total_travel)


def _prepare(request: TripRequest, candidates: list, matrix: TravelMatrix,
             tag_bonus: dict | None):
    request.validate()
    if not request.is_complete():
        missing = set(("destination", "dates", "party", "preferences", "budget")) \
            - request.filled_slots()
        raise ValidationError("request", f"incomplete request, missing {sorted(missing)}")
    id_to_row = {pid: i for i, pid in enumerate(matrix.poi_ids)}
    for poi in candidates:
        if poi.id not in id_to_row:
            raise ValidationError("matrix", f"matrix does not cover poi {poi.id}")
    party = request.party_size
    cands = []
    rejected_restricted = 0
    for poi in sorted(candidates, key=lambda p: p.id):
        eligible = poi_eligible(poi, request.restrictions)
        raw = score_poi(poi, request.preference_weights, request.restrictions)
        boosted = score_poi(poi, request.preference_weights, request.restrictions, tag_bonus)
        if not eligible:
            rejected_restricted += 1
            continue
        cands.append((poi, raw, boosted))
    # compact travel matrix over retained candidates
    tt = []
    recs = []
    for i, (poi, raw, boosted) in enumerate(cands):
        recs.append(_Cand(i, poi.id, boosted, raw, poi.visit_duration,
                          poi.cost_per_person * party, poi.hours.intervals,
                          is_food_poi(poi)))
    for i, (poi_i, _, _) in enumerate(cands):
        row_i = matrix.minutes[id_to_row[poi_i.id]]
        tt.append([row_i[id_to_row[poi_j.id]] for poi_j, _, _ in cands])
    return recs, tt, rejected_restricted


def plan(request: TripRequest, candidates: list, matrix: TravelMatrix,
         cfg: PlannerConfig | None = None, tag_bonus: dict | None = None):
    """Compute a feasible preference-maximizing itinerary.

    Returns (Itinerary, PlanDiagnostics). Empty candidate lists and
    unaffordable instances give an empty (but valid) itinerary.
    """
    cfg = cfg or PlannerConfig()
    return _solve(request, candidates, matrix, cfg, tag_bonus,
                  locked_by_day=None, drops=frozenset())


def replan(request: TripRequest, current: Itinerary, locks: set, drops: set,
           candidates: list, matrix: TravelMatrix, cfg: PlannerConfig | None = None,
           tag_bonus: dict | None = None):
    """Re-plan keeping locked visits on their day and in relative order."""
    cfg = cfg or PlannerConfig()
    locks = set(locks)
    drops = set(drops)
    if locks & drops:
        raise ValidationError("locks", f"lock/drop conflict on {sorted(locks & drops)}")
    current_ids = set(current.poi_ids())
    stray = locks - current_ids
    if stray:
        raise ValidationError("locks", f"locked POIs not in current itinerary: {sorted(stray)}")
    locked_by_day = [[v.poi_id for v in day.visits if v.poi_id in locks]
                     for day in current.days]
    return _solve(request, candidates, matrix, cfg, tag_bonus,
                  locked_by_day=locked_by_day, drops=frozenset(drops))


def _fresh_state(days, recs, tt, request, cap, locked_by_day):
    state = _State(days, recs, tt, request.budget_total, cap)
    by_id = {c.poi_id: c for c in recs}
    if locked_by_day is not None:
        for d, ids in enumerate(locked_by_day):
            if d >= len(days):
                break
            for pid in ids:
                cand = by_id.get(pid)
                if cand is None:
                    continue
                state.seqs[d].append(cand.idx)
                state.locked[d].append(True)
                state.spent += cand.cost
                state.placed.add(cand.idx)
            state.travels[d] = _day_travel(state.seqs[d], tt)
    return state


def _run_pipeline(state, pool, request, cfg, size_flags, priority, with_meal):
    small_instance, with_pairs = size_flags
    diag = PlanDiagnostics()
    meal_inserted = 0
    if with_meal:
        meal_inserted = _meal_attempts(state, pool, diag)
    _greedy_fill(state, pool, diag, priority)

    cap_iter = cfg.iteration_cap
    while diag.iterations < cap_iter:
        changed = False
        changed |= _relocate_within_day(state, diag, cap_iter)
        changed |= _two_opt_within_day(state, diag, cap_iter)
        changed |= _swap_across_days(state, diag, cap_iter)
        changed |= _relocate_across_days(state, diag, cap_iter)
        changed |= _exchange_with_pool(state, pool, diag, cap_iter)
        if small_instance:
            changed |= _drop_and_refill(state, pool, diag, cap_iter, priority, with_pairs)
        if _greedy_fill(state, pool, diag, priority):
            changed = True
        if not changed:
            break
    return diag, meal_inserted


def _solve(request, candidates, matrix, cfg, tag_bonus, locked_by_day, drops):
    start, end = request.date_range
    order = dates_in_range(start, end)
    days = [(date.weekday(), cfg.day_start, cfg.day_end) for date in order]
    cap = cfg.pace_caps.get(request.pace, cfg.pace_caps["normal"])
    kept = [p for p in candidates if p.id not in drops]
    recs, tt, n_restricted = _prepare(request, kept, matrix, tag_bonus)
    pool = [c for c in recs if c.score > 0.0]
    size_flags = (len(recs) <= DROP_REFILL_LIMIT, len(recs) <= PAIR_DROP_LIMIT)

    # deterministic construction variants; when budget binds, the cost-aware
    # run avoids expensive stops crowding out cheaper clusters; score-first
    # recovers dense stops that low-travel orderings lock out; the no-meal
    # runs recover plans the lunch pin would sacrifice
    food_weight = any(request.preference_weights.get(tag, 0.0) > 0.0
                      for tag in ("food", "restaurant"))
    best = None
    any_meal_inserted = False
    for priority in ("ratio", "cost", "score"):
        state = _fresh_state(days, recs, tt, request, cap, locked_by_day)
        diag, meals = _run_pipeline(state, pool, request, cfg, size_flags,
                                    priority, food_weight)
        any_meal_inserted = any_meal_inserted or meals > 0
        key = (-state.total_score(), state.total_travel())
        if best is None or key < best[0]:
            best = (key, state, diag)
    if food_weight and any_meal_inserted:
        for priority in ("ratio", "cost", "score"):
            state = _fresh_state(days, recs, tt, request, cap, locked_by_day)
            diag, _ = _run_pipeline(state, pool, request, cfg, size_flags,
                                    priority, False)
            key = (-state.total_score(), state.total_travel())
            if key < best[0]:
                best = (key, state, diag)
    _, state, diag = best

    for _ in range(n_restricted):
        diag.reject("restricted")
    for cand in recs:
        if cand.score <= 0.0 and cand.idx not in state.placed:
            diag.reject("zero_score")
    _classify_rejections(state, pool, diag)
    return _build_itinerary(state, order), diag
