from .providers import (CompletionRequest, MockChatProvider, HttpChatProvider,
                        parse_chat_payload)
from .persona import PersonaProfile, load_persona
from .grounding import GroundingReport, verify_grounding
from .narration import narrate_itinerary, template_narration
from .gateway import LlmGateway, extract_structured

__all__ = [
    "CompletionRequest", "MockChatProvider", "HttpChatProvider", "parse_chat_payload",
    "PersonaProfile", "load_persona", "GroundingReport", "verify_grounding",
    "narrate_itinerary", "template_narration", "LlmGateway", "extract_structured",
]
