"""Wires catalog, planner, retrieval, LLM gateway and session store together."""

from __future__ import annotations

import logging
import threading
from pathlib import Path

from ..config import AppConfig
from ..dialogue.machine import DialogueEngine, create_session
from ..dialogue.models import Phase, SessionState
from ..dialogue.profiles import neighbor_tag_bonus
from ..dialogue.store import SessionStore
from ..errors import TerminalStateError, ValidationError
from ..llm.gateway import LlmGateway
from ..llm.narration import narrate_itinerary
from ..llm.persona import load_persona
from ..llm.providers import HttpChatProvider, MockChatProvider
from ..planner.models import Itinerary
from ..planner.solver import plan, replan
from ..pois.catalog import PoiCatalog
from ..pois.travel import build_matrix
from ..retrieval.embeddings import HttpEmbeddingProvider, MockEmbeddingProvider
from ..retrieval.index import VectorIndex

logger = logging.getLogger(__name__)


def _chat_provider(cfg: AppConfig):
    settings = cfg.chat_provider
    if settings.kind == "http":
        return HttpChatProvider(settings.base_url, settings.model,
                                settings.api_key_env, settings.timeout_seconds,
                                settings.max_retries)
    return MockChatProvider()


def _embedding_provider(cfg: AppConfig):
    settings = cfg.embedding_provider
    if settings.kind == "http":
        return HttpEmbeddingProvider(settings.base_url, settings.model,
                                     settings.api_key_env, settings.wire_format,
                                     settings.timeout_seconds, settings.max_retries)
    return MockEmbeddingProvider(dim=cfg.retrieval.embed_dim)


class Runtime:
    """Holds the long-lived components and the in-memory session map."""

    def __init__(self, config: AppConfig):
        self.config = config
        data = config.data_path
        data.mkdir(parents=True, exist_ok=True)
        self.catalog = PoiCatalog.load(data / "pois.jsonl")
        self.persona = load_persona()
        self.chat = _chat_provider(config)
        self.gateway = LlmGateway(self.chat, self.persona)
        self.embedder = _embedding_provider(config)
        self.index = self._load_index(data / "index" / "snapshot.json")
        self.store = SessionStore(data / "sessions")
        self.sessions: dict = {}
        self._session_locks: dict = {}
        self._guard = threading.Lock()
        self._matrix_cache: dict = {}
        self.engine = DialogueEngine(
            plan_hook=self._plan_hook,
            narrate_hook=self._narrate_hook,
            extract_hook=self._extract_hook,
            prompt_hook=self._prompt_hook if self.gateway.is_live else None,
            persona_name=self.persona.name,
            known_destinations=self.catalog.destinations(),
            preference_tags=self.catalog.known_tags(),
            default_year=config.dialogue.default_year,
        )
        self._restore_sessions()

    # --- component wiring ---

    def _load_index(self, path: Path):
        if path.exists():
            try:
                return VectorIndex.load(path, embedder=self.embedder)
            except (ValidationError, OSError, KeyError) as exc:
                logger.warning("index snapshot unusable (%s); starting without it", exc)
        return None

    def _matrix_for(self, destination: str):
        mode = self.config.planner.mode
        key = (destination.casefold(), mode, len(self.catalog))
        if key not in self._matrix_cache:
            candidates = self.catalog.find_pois(
                destination, frozenset(), self.config.planner.candidate_limit)
            if not candidates:
                return None, []
            speeds = {"walk": self.config.travel.walk_kmh,
                      "drive": self.config.travel.drive_kmh}
            self._matrix_cache[key] = (build_matrix(candidates, mode, speeds), candidates)
        return self._matrix_cache[key]

    def _plan_hook(self, request, locks, drops, current):
        matrix, candidates = self._matrix_for(request.destination or "")
        if matrix is None:
            return Itinerary(days=[])
        bonus = None
        factor = self.config.planner.similarity_bonus
        if factor > 0.0:
            bonus = neighbor_tag_bonus(request, self, factor)
        if current and (locks or drops):
            itinerary, _ = replan(request, Itinerary.from_dict(current), locks, drops,
                                  candidates, matrix, self.config.planner, bonus)
        else:
            itinerary, _ = plan(request, candidates, matrix, self.config.planner, bonus)
        return itinerary

    def _narrate_hook(self, itinerary_dict, language):
        destination = {p.destination for p in self.catalog.all_pois()}
        return narrate_itinerary(itinerary_dict, self.catalog, self.persona, language,
                                 self.chat, allowed_extra=destination)

    def _extract_hook(self, message, language):
        return self.gateway.extract(message, language)

    def _prompt_hook(self, template_text, session):
        from ..llm.providers import CompletionRequest
        request = CompletionRequest(
            system=f"Rephrase warmly as {self.persona.name}; keep the meaning.",
            messages=[("user", template_text)], temperature=0.7,
            language=session.language)
        return self.gateway.complete(request)

    # --- session lifecycle ---

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def _restore_sessions(self) -> None:
        for session_id in self.store.session_ids():
            events = self.store.read_events(session_id)
            try:
                session = self.engine.replay(events)
            except Exception:
                logger.exception("could not replay session %s", session_id)
                continue
            if session is not None:
                self.sessions[session_id] = session

    def create(self, language: str, timestamp: str) -> SessionState:
        session = create_session(language)
        self.sessions[session.session_id] = session
        self.store.append_event(session.session_id, {
            "type": "created", "session_id": session.session_id,
            "language": language, "ts": timestamp,
        })
        return session

    def get_session(self, session_id: str) -> SessionState | None:
        return self.sessions.get(session_id)

    def handle_message(self, session_id: str, text: str, timestamp: str):
        session = self.sessions.get(session_id)
        if session is None:
            return None
        with self._lock_for(session_id):
            if session.phase == Phase.CLOSED:
                raise TerminalStateError(session_id)
            self.store.append_event(session_id, {
                "type": "user_message", "text": text, "ts": timestamp,
            })
            result = self.engine.apply_message(session, text, timestamp)
            return session, result

    def record_feedback(self, session_id: str, event) -> SessionState | None:
        session = self.sessions.get(session_id)
        if session is None:
            return None
        with self._lock_for(session_id):
            self.engine.record_feedback(session, event)
            self.store.append_event(session_id, {
                "type": "feedback", "event": event.to_dict(), "ts": event.timestamp,
            })
        return session

    # --- profile store protocol (similarity features) ---

    def completed_profiles(self) -> list:
        profiles = []
        for session_id in sorted(self.sessions):
            session = self.sessions[session_id]
            if session.phase != Phase.CLOSED:
                continue
            accepted = set()
            for event in session.feedback:
                good = event.verdict == "accept" or (
                    isinstance(event.verdict, int) and event.verdict >= 4)
                if not good:
                    continue
                poi = self.catalog.get(event.target)
                if poi:
                    accepted |= set(poi.category_tags)
            profiles.append((session_id,
                             dict(session.request.preference_weights or {}),
                             accepted))
        return profiles

    # --- health ---

    def health(self) -> dict:
        return {
            "status": "ok",
            "catalog_size": len(self.catalog),
            "index": "loaded" if self.index is not None else "absent",
            "chat_provider": self.config.chat_provider.kind,
            "sessions": len(self.sessions),
        }
