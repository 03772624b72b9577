"""Two-phase dialogue state machine.

Phase one collects the five slots in a fixed order; phase two proposes the
itinerary and handles refinements (keep/remove a stop, change budget,
download). The machine itself is deterministic code; only question phrasing
may be delegated to a live language model.
"""

from __future__ import annotations

import json
import logging
import re
import uuid
from datetime import datetime, timezone
from functools import lru_cache
from pathlib import Path

from ..errors import TerminalStateError, ValidationError
from ..textutil import fold
from .models import Phase, PromptSpec, SessionState, TripRequest, SLOT_ORDER, FeedbackEvent
from .slots import SlotLexicons, extract_slots

logger = logging.getLogger(__name__)

_RESOURCES = Path(__file__).resolve().parent.parent / "resources"

SUPPORTED_LANGUAGES = ("it", "en")

BUDGET_CHANGE_RE = re.compile(
    r"(?:budget|spendere|spend)\D{0,24}?(\d+(?:[.,]\d{1,2})?)")


@lru_cache(maxsize=None)
def load_strings(language: str) -> dict:
    with open(_RESOURCES / f"strings_{language}.json", encoding="utf-8") as fh:
        return json.load(fh)


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def create_session(language: str, session_id: str | None = None) -> SessionState:
    if language not in SUPPORTED_LANGUAGES:
        raise ValidationError("language", f"unsupported language {language!r}")
    return SessionState(session_id=session_id or uuid.uuid4().hex, language=language)


class ApplyResult:
    """What one message did: actions run and the assistant's reply."""

    def __init__(self, reply: str, actions: list):
        self.reply = reply
        self.actions = actions


class DialogueEngine:
    """Wires the slot machine to its collaborators.

    ``plan_hook(request, locks, drops, current)`` returns an Itinerary (or
    None); ``narrate_hook(itinerary, language)`` returns the proposal text;
    ``export_hook(session)`` is invoked on the download intent;
    ``extract_hook(message, language)`` is the optional model fallback and
    must return a slot-update dict (validated here before acceptance).
    """

    def __init__(self, plan_hook=None, narrate_hook=None, export_hook=None,
                 extract_hook=None, prompt_hook=None, persona_name: str = "zIA",
                 known_destinations=(), preference_tags=(), default_year: int = 2026):
        self.plan_hook = plan_hook
        self.narrate_hook = narrate_hook
        self.export_hook = export_hook
        self.extract_hook = extract_hook
        self.prompt_hook = prompt_hook
        self.persona_name = persona_name
        self.known_destinations = list(known_destinations)
        self.preference_tags = list(preference_tags)
        self.lexicons = SlotLexicons.load(default_year=default_year)

    # --- prompts ---

    def next_prompt(self, session: SessionState) -> PromptSpec:
        if session.phase == Phase.CLOSED:
            raise TerminalStateError(f"session {session.session_id} is closed")
        strings = load_strings(session.language)
        if session.phase in (Phase.PROPOSING, Phase.REFINING):
            return PromptSpec(strings["review_itinerary"], None,
                              list(strings["quick_review"]))
        slot = session.pending_slot or "destination"
        question = strings[f"ask_{slot}"].format(
            persona=self.persona_name,
            destination=session.request.destination or "")
        question = self._render_question(question, session)
        quick = []
        if slot == "preferences":
            quick = list(self.preference_tags)
        elif slot == "budget":
            quick = list(strings["quick_budget"])
        elif slot == "party":
            quick = list(strings["quick_party"])
        elif slot == "dates":
            quick = list(strings["quick_dates"])
        elif slot == "destination":
            quick = list(self.known_destinations)[:4]
        return PromptSpec(question, slot, quick)

    def _render_question(self, template_text: str, session: SessionState) -> str:
        if self.prompt_hook is None:
            return template_text
        try:
            return self.prompt_hook(template_text, session)
        except Exception:  # provider trouble never blocks the dialogue
            logger.warning("prompt rendering fell back to template", exc_info=True)
            return template_text

    # --- message handling ---

    def apply_message(self, session: SessionState, message: str,
                      timestamp: str | None = None) -> ApplyResult:
        if session.phase == Phase.CLOSED:
            raise TerminalStateError(f"session {session.session_id} is closed")
        ts = timestamp or _now_iso()
        session.append("user", message, ts)
        if session.phase == Phase.COLLECTING:
            result = self._handle_collecting(session, message, ts)
        else:
            result = self._handle_review(session, message, ts)
        session.append("assistant", result.reply, ts)
        return result

    def _merge_updates(self, session: SessionState, updates: dict) -> bool:
        """Apply validated slot updates; returns True when anything changed."""
        if not updates:
            return False
        request = session.request
        changed = False
        destination_changed = ("destination" in updates and request.destination
                               and updates["destination"] != request.destination)
        merged: dict = {}
        for key, value in updates.items():
            if key == "restrictions":
                merged[key] = request.restrictions | frozenset(value)
            elif key == "preference_weights":
                weights = dict(request.preference_weights or {})
                weights.update(value)
                merged[key] = weights
            else:
                merged[key] = value
        for key, value in merged.items():
            try:
                session.request = session.request.merged({key: value})
                changed = True
            except ValidationError as exc:
                logger.info("rejected slot update %s: %s", key, exc)
        if destination_changed and session.current_itinerary is not None:
            # destination changed mid-planning: itinerary and the
            # destination-dependent preferences slot are collected again
            session.current_itinerary = None
            session.narration = ""
            session.locked_poi_ids.clear()
            session.dropped_poi_ids.clear()
            session.request = session.request.merged({"preference_weights": None})
            session.phase = Phase.COLLECTING
        return changed

    def _handle_collecting(self, session: SessionState, message: str, ts: str) -> ApplyResult:
        updates = extract_slots(message, session.pending_slot, session.language,
                                self.lexicons, self.known_destinations)
        if not updates and self.extract_hook is not None:
            try:
                updates = self.extract_hook(message, session.language) or {}
            except Exception:
                logger.warning("model slot extraction failed", exc_info=True)
                updates = {}
        rule_found = self._merge_updates(session, updates)
        strings = load_strings(session.language)
        actions: list = []

        filled = session.request.filled_slots()
        if set(SLOT_ORDER) <= filled:
            session.pending_slot = None
            session.phase = Phase.PROPOSING
            actions.append(("plan",))
            reply = self._run_plan(session, strings)
            return ApplyResult(reply, actions)

        session.pending_slot = next(s for s in SLOT_ORDER if s not in filled)
        prompt = self.next_prompt(session)
        if rule_found:
            return ApplyResult(prompt.question, actions)
        return ApplyResult(strings["reask"].format(question=prompt.question), actions)

    def _run_plan(self, session: SessionState, strings: dict,
                  refined: bool = False) -> str:
        itinerary = None
        if self.plan_hook is not None:
            itinerary = self.plan_hook(session.request,
                                       set(session.locked_poi_ids),
                                       set(session.dropped_poi_ids),
                                       session.current_itinerary)
        if itinerary is None:
            session.current_itinerary = None
            return strings["planned_empty"]
        session.current_itinerary = itinerary if isinstance(itinerary, dict) \
            else itinerary.to_dict()
        empty = not any(day["visits"] for day in session.current_itinerary["days"])
        if empty:
            session.narration = ""
            return strings["planned_empty"]
        if self.narrate_hook is not None:
            session.narration = self.narrate_hook(session.current_itinerary,
                                                  session.language)
        intro = strings["refined"] if refined else strings["review_itinerary"]
        if session.narration:
            return session.narration + "\n\n" + intro
        return intro

    def _handle_review(self, session: SessionState, message: str, ts: str) -> ApplyResult:
        strings = load_strings(session.language)
        folded = fold(message)
        lex = self.lexicons
        actions: list = []

        if any(fold(w) in folded.split() or fold(w) in folded for w in lex.download):
            session.phase = Phase.CLOSED
            actions.append(("export",))
            if self.export_hook is not None:
                self.export_hook(session)
            return ApplyResult(strings["export_ready"], actions)

        drop_hit = _verb_hit(folded, lex.drop_verbs)
        lock_hit = _verb_hit(folded, lex.lock_verbs)
        if drop_hit or lock_hit:
            poi_id = self._resolve_poi(session, folded)
            if poi_id is None:
                return ApplyResult(strings["no_poi_match"], actions)
            if session.phase == Phase.PROPOSING:
                session.phase = Phase.REFINING
            if drop_hit:
                session.dropped_poi_ids.add(poi_id)
                session.locked_poi_ids.discard(poi_id)
                actions.append(("replan", ("drop", poi_id)))
            else:
                session.locked_poi_ids.add(poi_id)
                actions.append(("replan", ("lock", poi_id)))
            reply = self._run_plan(session, strings, refined=True)
            return ApplyResult(reply, actions)

        budget_match = BUDGET_CHANGE_RE.search(folded)
        if budget_match:
            new_budget = float(budget_match.group(1).replace(",", "."))
            try:
                session.request = session.request.merged({"budget_total": new_budget})
            except ValidationError:
                return ApplyResult(strings["no_poi_match"], actions)
            if session.phase == Phase.PROPOSING:
                session.phase = Phase.REFINING
            # the previous lock set may no longer be affordable; replan from scratch
            session.locked_poi_ids.clear()
            actions.append(("replan", ("budget", new_budget)))
            reply = self._run_plan(session, strings, refined=True)
            return ApplyResult(reply, actions)

        if _verb_hit(folded, lex.accept):
            return ApplyResult(strings["accepted"], actions)

        # possibly a destination change while reviewing
        updates = extract_slots(message, None, session.language, lex,
                                self.known_destinations)
        if self._merge_updates(session, updates):
            if session.phase == Phase.COLLECTING:
                filled = session.request.filled_slots()
                session.pending_slot = next(
                    (s for s in SLOT_ORDER if s not in filled), None)
                prompt = self.next_prompt(session)
                return ApplyResult(prompt.question, actions)
            actions.append(("replan", ("update",)))
            reply = self._run_plan(session, strings, refined=True)
            return ApplyResult(reply, actions)

        return ApplyResult(strings["review_itinerary"], actions)

    def _resolve_poi(self, session: SessionState, folded_message: str) -> str | None:
        """Match a POI named in the message against the current itinerary."""
        if not session.current_itinerary:
            return None
        best = None
        best_len = 0
        for day in session.current_itinerary["days"]:
            for visit in day["visits"]:
                name = visit.get("name") or visit["poi_id"]
                folded_name = fold(name)
                if folded_name and folded_name in folded_message:
                    if len(folded_name) > best_len:
                        best, best_len = visit["poi_id"], len(folded_name)
                    continue
                # fall back to distinctive-word overlap (articles aside)
                words = [w for w in folded_name.split() if len(w) > 3]
                if words and all(w in folded_message for w in words):
                    if len(folded_name) - 1 > best_len:
                        best, best_len = visit["poi_id"], len(folded_name) - 1
        return best

    # --- feedback ---

    def record_feedback(self, session: SessionState, event: FeedbackEvent) -> SessionState:
        if session.phase == Phase.COLLECTING:
            raise ValidationError("phase", "feedback requires a proposed itinerary")
        event.validate()
        session.feedback.append(event)
        return session

    # --- event-log replay ---

    def replay(self, events: list) -> SessionState:
        """Rebuild a session by re-running its event log through the machine."""
        session = None
        for event in events:
            kind = event.get("type")
            if kind == "created":
                session = create_session(event["language"], event["session_id"])
            elif kind == "user_message" and session is not None:
                try:
                    self.apply_message(session, event["text"], event["ts"])
                except TerminalStateError:
                    logger.warning("replay: message after close ignored")
            elif kind == "feedback" and session is not None:
                self.record_feedback(session, FeedbackEvent.from_dict(event["event"]))
        return session


def _verb_hit(folded: str, verbs: list) -> bool:
    return any(re.search(r"(?<!\w)" + re.escape(fold(v)) + r"(?!\w)", folded)
               for v in verbs)
