"""Chat-completion providers: deterministic mock and HTTP adapter.

The wire shape is the de-facto chat-completion JSON (messages in, choices
out); alternate providers are adapters, not rewrites.
"""

from __future__ import annotations

import json
import os
import random
import re
import time
from dataclasses import dataclass, field

import requests

from ..errors import ProviderError, ValidationError

NARRATION_MARKER = "VISIT:"
EXTRACT_MARKER = "EXTRACT SLOTS"


@dataclass
class CompletionRequest:
    system: str
    messages: list                    # (role, content) pairs
    temperature: float = 0.7
    max_tokens: int = 512
    language: str = "it"

    def validate(self) -> "CompletionRequest":
        if not self.messages:
            raise ValidationError("messages", "must be non-empty")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValidationError("temperature", f"{self.temperature} outside [0, 2]")
        return self


def parse_chat_payload(payload: dict) -> str:
    """Extract the assistant text from a chat-completion response body."""
    return payload["choices"][0]["message"]["content"]


class MockChatProvider:
    """Deterministic offline provider.

    Replies are templates keyed off markers in the last user message, so the
    whole system is reproducible end to end. ``inject_entity`` appends a
    fabricated name to narrations (used to exercise the grounding fallback).
    """

    is_live = False

    def __init__(self, seed: int = 0, inject_entity: str = ""):
        self.seed = seed
        self.inject_entity = inject_entity

    def complete(self, request: CompletionRequest) -> str:
        request.validate()
        last = request.messages[-1][1]
        if NARRATION_MARKER in last:
            text = self._narrate(last, request.language)
            if self.inject_entity:
                text += f" Non perdere {self.inject_entity}!" if request.language == "it" \
                    else f" Do not miss {self.inject_entity}!"
            return text
        if EXTRACT_MARKER in last:
            return self._extract(last)
        digest = sum(ord(c) for c in last) + self.seed
        openers_it = ("Certo!", "Volentieri!", "Ma certo, tesoro!")
        openers_en = ("Of course!", "Gladly!", "Sure thing, dear!")
        openers = openers_it if request.language == "it" else openers_en
        return f"{openers[digest % len(openers)]} {last.strip()}"

    def _narrate(self, prompt: str, language: str) -> str:
        lines = [ln for ln in prompt.splitlines() if ln.strip().startswith(NARRATION_MARKER)]
        names = [ln.split(NARRATION_MARKER, 1)[1].strip() for ln in lines]
        if language == "it":
            parts = ["Che viaggio meraviglioso ho preparato per te!"]
            for name in names:
                parts.append(f"Ti aspetta {name}.")
            parts.append("Vedrai che esperienza!")
        else:
            parts = ["What a wonderful trip I have prepared for you!"]
            for name in names:
                parts.append(f"Awaiting you is {name}.")
            parts.append("You will love every moment!")
        return " ".join(parts)

    def _extract(self, prompt: str) -> str:
        folded = prompt.lower()
        out = []
        m = re.search(r"(\d+)\s+(?:nights?|notti)\s+(?:in|a)\s+([a-zà-ù][\w']*)", folded)
        if m:
            out.append(f"nights={m.group(1)}")
            out.append(f"destination={m.group(2).title()}")
        m = re.search(r"budget[^0-9-]*(-?\d+)", folded)
        if m:
            out.append(f"budget={m.group(1)}")
        return "\n".join(out) if out else "none"


class HttpChatProvider:
    """Live provider: bounded retries with jitter, configured timeout."""

    is_live = True

    def __init__(self, base_url: str, model: str, api_key_env: str = "",
                 timeout: float = 15.0, max_retries: int = 2, rng: random.Random | None = None,
                 sleep=time.sleep):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = os.environ.get(api_key_env, "") if api_key_env else ""
        self.timeout = timeout
        self.max_retries = max_retries
        self.rng = rng or random.Random()
        self.sleep = sleep

    def complete(self, request: CompletionRequest) -> str:
        request.validate()
        body = {
            "model": self.model,
            "messages": [{"role": "system", "content": request.system}]
                        + [{"role": role, "content": content}
                           for role, content in request.messages],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        url = f"{self.base_url}/chat/completions"
        last_error = None
        for attempt in range(self.max_retries + 1):
            try:
                response = requests.post(url, json=body, headers=headers,
                                         timeout=self.timeout)
                response.raise_for_status()
                return parse_chat_payload(response.json())
            except (requests.RequestException, KeyError, IndexError,
                    json.JSONDecodeError) as exc:
                last_error = exc
                if attempt < self.max_retries:
                    self.sleep(0.2 * (attempt + 1) + self.rng.uniform(0, 0.2))
        raise ProviderError(f"chat completion failed: {last_error}", degraded=True)
