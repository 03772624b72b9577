"""Random instance generation and oracle-backed quality evaluations.

Shared by the `eval` CLI commands and the acceptance tests so both judge the
same distributions.
"""

from __future__ import annotations

import math
import random
from datetime import date as Date, timedelta

from .config import PlannerConfig
from .dialogue.models import TripRequest
from .planner.oracle import brute_force_plan
from .planner.solver import plan
from .planner.validation import validate
from .pois.catalog import PoiCatalog
from .pois.models import GeoPoint, OpeningHours, Poi
from .pois.travel import build_matrix

INSTANCE_TAGS = ("nature", "food", "culture", "history", "religion",
                 "shopping", "events", "sea", "sport", "family")

_HOUR_PATTERNS = (
    [(0, 1440)],
    [(540, 1140)],
    [(540, 780), (900, 1320)],
    [(600, 1320)],
    [(480, 900)],
)


def _random_hours(rng: random.Random) -> OpeningHours:
    pattern = rng.choice(_HOUR_PATTERNS)
    per_day = [list(pattern) for _ in range(7)]
    if rng.random() < 0.3:
        per_day[rng.randrange(7)] = []   # closed one weekday
    return OpeningHours.from_lists(per_day)


def random_poi(rng: random.Random, i: int, destination: str = "Testville",
               center=(41.56, 14.66), spread: float = 0.04) -> Poi:
    tags = rng.sample(INSTANCE_TAGS, k=rng.randint(1, 3))
    return Poi(
        id=f"poi{i:03d}",
        name=f"Poi {i:03d}",
        destination=destination,
        category_tags=frozenset(tags),
        position=GeoPoint(center[0] + rng.uniform(-spread, spread),
                          center[1] + rng.uniform(-spread, spread)),
        hours=_random_hours(rng),
        visit_duration=rng.choice((30, 45, 60, 90, 120)),
        cost_per_person=float(rng.choice((0, 3, 5, 8, 12, 15))),
        description=f"generated fixture poi {i}",
        source_ref="generator",
    ).validate()


def random_instance(rng: random.Random, n_pois: int, n_days: int):
    """(request, pois, matrix) drawn from the evaluation distribution."""
    pois = [random_poi(rng, i) for i in range(n_pois)]
    party = (rng.randint(1, 3), rng.randint(0, 2))
    weights = {tag: round(rng.uniform(0.1, 1.0), 2)
               for tag in rng.sample(INSTANCE_TAGS, k=rng.randint(2, 5))}
    total_cost = sum(p.cost_per_person for p in pois) * (party[0] + party[1])
    budget = round(rng.uniform(0.2, 1.2) * max(total_cost, 1.0), 2)
    start = Date(2026, 5, 1) + timedelta(days=rng.randint(0, 60))
    restrictions = frozenset(["vegetarian"]) if rng.random() < 0.2 else frozenset()
    request = TripRequest(
        destination="Testville",
        date_range=(start, start + timedelta(days=n_days - 1)),
        party=party,
        preference_weights=weights,
        budget_total=budget,
        restrictions=restrictions,
        pace=rng.choice(("relaxed", "normal", "intense")),
    ).validate()
    matrix = build_matrix(pois, "walk")
    return request, pois, matrix


def planner_oracle_gap(instances: int, seed: int,
                       cfg: PlannerConfig | None = None) -> dict:
    """Heuristic-vs-enumeration score ratio on small instances."""
    cfg = cfg or PlannerConfig()
    rng = random.Random(seed)
    ratios = []
    worst = None
    for i in range(instances):
        n = rng.randint(2, 6)
        days = rng.randint(1, 2)
        request, pois, matrix = random_instance(rng, n, days)
        heuristic, _ = plan(request, pois, matrix, cfg)
        optimal = brute_force_plan(request, pois, matrix, cfg)
        if optimal.total_score <= 0:
            ratios.append(1.0)
            continue
        ratio = heuristic.total_score / optimal.total_score
        ratios.append(ratio)
        if worst is None or ratio < worst[0]:
            worst = (ratio, i)
    return {
        "instances": instances,
        "min_ratio": round(min(ratios), 6),
        "mean_ratio": round(sum(ratios) / len(ratios), 6),
        "mean_gap": round(1.0 - sum(ratios) / len(ratios), 6),
        "worst_instance": worst[1] if worst else None,
    }


def planner_feasibility(instances: int, seed: int,
                        cfg: PlannerConfig | None = None) -> dict:
    """Runs validate(plan(...)) over random instances; counts violations."""
    cfg = cfg or PlannerConfig()
    rng = random.Random(seed)
    violations = 0
    examples = []
    for i in range(instances):
        n = rng.randint(2, 40)
        days = rng.randint(1, 4)
        request, pois, matrix = random_instance(rng, n, days)
        itinerary, _ = plan(request, pois, matrix, cfg)
        problems = validate(itinerary, request, PoiCatalog(pois), matrix)
        if problems:
            violations += 1
            if len(examples) < 3:
                examples.append({"instance": i, "problems": problems})
    return {"instances": instances, "violating": violations, "examples": examples}


def _brute_force_hits(entries: list, query_vector, k: int) -> list:
    """Pure-python cosine ranking, the oracle for index queries."""
    scored = []
    q = list(query_vector.values)
    nq = math.sqrt(sum(x * x for x in q))
    for chunk_id, vector in entries:
        v = list(vector.values)
        dot = sum(a * b for a, b in zip(q, v))
        nv = math.sqrt(sum(a * a for a in v))
        score = 0.0 if nq == 0 or nv == 0 else dot / (nq * nv)
        scored.append((chunk_id, score))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored[:k]


def retrieval_exactness(n_entries: int, n_queries: int, seed: int,
                        dim: int = 64) -> dict:
    from .retrieval.embeddings import MockEmbeddingProvider
    from .retrieval.index import IndexEntry, VectorIndex

    rng = random.Random(seed)
    embedder = MockEmbeddingProvider(dim=dim)
    words = [f"w{j}" for j in range(200)]
    texts = []
    for i in range(n_entries):
        if i % 17 == 0 and texts:
            texts.append(texts[rng.randrange(len(texts))])  # deliberate ties
        else:
            texts.append(" ".join(rng.choices(words, k=rng.randint(4, 24))))
    vectors = embedder.embed(texts)
    entries = [IndexEntry(f"c{i:05d}", v, {"text": t})
               for i, (t, v) in enumerate(zip(texts, vectors))]
    index = VectorIndex(dim, embedder=embedder)
    index.add(entries)
    raw = [(e.chunk_id, e.vector) for e in entries]

    mismatches = 0
    for _ in range(n_queries):
        query_text = " ".join(rng.choices(words, k=rng.randint(3, 12)))
        qv = embedder.embed([query_text])[0]
        for k in (1, 5, 20):
            got = [h.chunk_id for h in index.query_vector(qv, k)]
            expected = [cid for cid, _ in _brute_force_hits(raw, qv, k)]
            if got != expected:
                mismatches += 1
    return {"entries": n_entries, "queries": n_queries,
            "mismatches": mismatches, "exact": mismatches == 0}
