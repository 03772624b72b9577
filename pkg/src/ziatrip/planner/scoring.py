"""Preference scoring and restriction eligibility."""

from __future__ import annotations

from ..pois.models import Poi

# tags that make a POI count as a food stop
MEAL_TAGS = frozenset({"food", "restaurant"})

# restriction tag -> tag the POI must carry to stay eligible (food POIs only)
DIETARY_REQUIRED_TAG = {
    "vegetarian": "vegetarian",
    "vegan": "vegan",
    "gluten_free": "gluten_free",
}

ALLERGY_PREFIX = "allergy:"
CONTAINS_PREFIX = "contains:"


def is_food_poi(poi: Poi) -> bool:
    return bool(poi.category_tags & MEAL_TAGS)


def poi_eligible(poi: Poi, restrictions: frozenset | set) -> bool:
    """False when the POI conflicts with a dietary restriction or allergy."""
    for restriction in restrictions:
        if restriction in DIETARY_REQUIRED_TAG:
            if is_food_poi(poi) and DIETARY_REQUIRED_TAG[restriction] not in poi.category_tags:
                return False
        elif restriction.startswith(ALLERGY_PREFIX):
            allergen = restriction[len(ALLERGY_PREFIX):]
            if CONTAINS_PREFIX + allergen in poi.category_tags:
                return False
    return True


def score_poi(poi: Poi, preference_weights: dict, restrictions: frozenset | set = frozenset(),
              tag_bonus: dict | None = None) -> float:
    """Sum of preference weights over the POI's tags; 0 when ineligible.

    ``tag_bonus`` holds multiplicative boosts (e.g. from similar-profile
    feedback): weight * (1 + bonus).
    """
    if not poi_eligible(poi, restrictions):
        return 0.0
    total = 0.0
    for tag in poi.category_tags:
        weight = preference_weights.get(tag, 0.0)
        if weight and tag_bonus:
            weight *= 1.0 + tag_bonus.get(tag, 0.0)
        total += weight
    return total
