"""Preference-profile similarity over completed sessions."""

from __future__ import annotations

import math

from .models import TripRequest


def _cosine(weights_a: dict, weights_b: dict) -> float:
    tags = sorted(set(weights_a) | set(weights_b))
    if not tags:
        return 0.0
    va = [weights_a.get(t, 0.0) for t in tags]
    vb = [weights_b.get(t, 0.0) for t in tags]
    dot = sum(x * y for x, y in zip(va, vb))
    na = math.sqrt(sum(x * x for x in va))
    nb = math.sqrt(sum(y * y for y in vb))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


def similar_profiles(request: TripRequest, store, k: int) -> list:
    """Top-k (session_id, similarity) over completed sessions in the store.

    ``store`` must offer completed_profiles() -> list of
    (session_id, preference_weights, accepted_tags).
    """
    own = request.preference_weights or {}
    ranked = []
    for session_id, weights, _tags in store.completed_profiles():
        ranked.append((session_id, _cosine(own, weights or {})))
    ranked.sort(key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def neighbor_tag_bonus(request: TripRequest, store, factor: float,
                       top: int = 3) -> dict:
    """Score bonus per tag from what the most similar profiles accepted.

    Tags accepted (verdict accept or rating >= 4) by the top ``top`` similar
    completed sessions get a multiplicative boost of ``factor``.
    """
    if factor <= 0.0:
        return {}
    neighbors = {sid for sid, _ in similar_profiles(request, store, top)}
    bonus: dict = {}
    for session_id, _weights, accepted_tags in store.completed_profiles():
        if session_id not in neighbors:
            continue
        for tag in accepted_tags:
            bonus[tag] = factor
    return bonus
