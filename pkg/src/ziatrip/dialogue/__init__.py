from .models import (FeedbackEvent, Phase, PromptSpec, SessionState, TripRequest,
                     SLOT_ORDER)
from .machine import DialogueEngine, create_session
from .slots import extract_slots
from .profiles import similar_profiles
from .store import SessionStore

__all__ = [
    "FeedbackEvent", "Phase", "PromptSpec", "SessionState", "TripRequest", "SLOT_ORDER",
    "DialogueEngine", "create_session", "extract_slots", "similar_profiles", "SessionStore",
]
