"""HTTP boundary: session endpoints for the chat UI, export, health.

Designed to sit behind a reverse proxy; binds to a private address and all
errors use one JSON envelope {code, message, detail}.
"""

from __future__ import annotations

from datetime import datetime, timezone

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..dialogue.models import FeedbackEvent, Phase
from ..errors import TerminalStateError, ValidationError
from .export import render_export
from .runtime import Runtime


class CreateSessionBody(BaseModel):
    language: str


class MessageBody(BaseModel):
    text: str


class FeedbackBody(BaseModel):
    target: str
    verdict: str | int


def _error(status: int, code: str, message: str, detail: str = "") -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message, "detail": detail})


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def create_app(runtime: Runtime) -> FastAPI:
    app = FastAPI(title="ziatrip", version="0.1.0")

    @app.exception_handler(ValidationError)
    async def on_validation_error(request: Request, exc: ValidationError):
        return _error(400, "validation_error", str(exc), exc.field)

    @app.exception_handler(TerminalStateError)
    async def on_terminal(request: Request, exc: TerminalStateError):
        return _error(409, "session_closed", "session is closed", str(exc))

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session = runtime.create(body.language, _now())
        prompt = runtime.engine.next_prompt(session)
        return {"session_id": session.session_id, "first_prompt": prompt.to_dict()}

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody):
        outcome = runtime.handle_message(session_id, body.text, _now())
        if outcome is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        session, result = outcome
        payload = {
            "reply": result.reply,
            "phase": session.phase.value,
            "actions": [list(a) for a in result.actions],
        }
        if session.current_itinerary is not None:
            payload["itinerary"] = session.current_itinerary
        if session.phase == Phase.COLLECTING:
            payload["prompt"] = runtime.engine.next_prompt(session).to_dict()
        return payload

    @app.get("/sessions/{session_id}/itinerary")
    def get_itinerary(session_id: str):
        session = runtime.get_session(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        if session.current_itinerary is None:
            return _error(404, "no_itinerary", "nothing planned yet")
        return session.current_itinerary

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str):
        session = runtime.get_session(session_id)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        if session.current_itinerary is None:
            return _error(404, "no_itinerary", "nothing planned yet")
        markdown = render_export(session, runtime.catalog, runtime.persona.name)
        return Response(content=markdown, media_type="text/markdown; charset=utf-8")

    @app.post("/sessions/{session_id}/feedback")
    def post_feedback(session_id: str, body: FeedbackBody):
        event = FeedbackEvent(body.target, body.verdict, _now()).validate()
        session = runtime.record_feedback(session_id, event)
        if session is None:
            return _error(404, "not_found", f"unknown session {session_id}")
        return {"recorded": len(session.feedback)}

    @app.get("/healthz")
    def healthz():
        return runtime.health()

    return app
