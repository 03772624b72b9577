"""Embedding providers: a deterministic offline mock and HTTP adapters.

The mock hashes character trigrams into a fixed-dimension vector, so equal
texts embed identically and similar texts land near each other — enough for
ranking tests without any network.
"""

from __future__ import annotations

import json
import math
import os
import zlib
from dataclasses import dataclass

import requests

from ..errors import ProviderError, ValidationError
from ..textutil import fold

MOCK_DIM = 64


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple

    @property
    def dim(self) -> int:
        return len(self.values)

    def validate(self) -> "EmbeddingVector":
        if self.dim == 0:
            raise ValidationError("dim", "must be > 0")
        if any(not math.isfinite(v) for v in self.values):
            raise ValidationError("values", "must all be finite")
        return self


def cosine_similarity(a: EmbeddingVector, b: EmbeddingVector) -> float:
    if a.dim != b.dim:
        raise ValidationError("dim", f"{a.dim} != {b.dim}")
    dot = sum(x * y for x, y in zip(a.values, b.values))
    na = math.sqrt(sum(x * x for x in a.values))
    nb = math.sqrt(sum(y * y for y in b.values))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


class MockEmbeddingProvider:
    """Seeded character-trigram hashing projected to MOCK_DIM dims, L2-normalized."""

    def __init__(self, dim: int = MOCK_DIM, seed: int = 7):
        self.dim = dim
        self.seed = seed

    def embed(self, texts: list) -> list:
        if not texts:
            raise ValidationError("texts", "must be non-empty")
        return [self._one(text) for text in texts]

    def _one(self, text: str) -> EmbeddingVector:
        folded = "\x02" + fold(text) + "\x03"
        acc = [0.0] * self.dim
        for i in range(len(folded) - 2):
            gram = folded[i:i + 3]
            h = zlib.crc32(f"{self.seed}:{gram}".encode("utf-8"))
            bucket = h % self.dim
            sign = 1.0 if (h >> 16) & 1 else -1.0
            acc[bucket] += sign
        norm = math.sqrt(sum(v * v for v in acc))
        if norm == 0.0:
            acc[0] = 1.0
            norm = 1.0
        return EmbeddingVector(tuple(v / norm for v in acc)).validate()


def parse_openai_embeddings(payload: dict) -> list:
    """{"data": [{"index": i, "embedding": [...]}]} -> vectors in index order."""
    rows = sorted(payload["data"], key=lambda row: row["index"])
    return [EmbeddingVector(tuple(float(x) for x in row["embedding"])).validate()
            for row in rows]


def parse_cohere_embeddings(payload: dict) -> list:
    """{"embeddings": [[...], ...]} -> vectors in input order."""
    return [EmbeddingVector(tuple(float(x) for x in row)).validate()
            for row in payload["embeddings"]]


_PARSERS = {"openai": parse_openai_embeddings, "cohere": parse_cohere_embeddings}


class HttpEmbeddingProvider:
    """Batch-of-texts in, array-of-vectors out; field mapping per wire format."""

    def __init__(self, base_url: str, model: str = "", api_key_env: str = "",
                 wire_format: str = "openai", timeout: float = 15.0,
                 max_retries: int = 2):
        if wire_format not in _PARSERS:
            raise ValidationError("wire_format", f"unknown format {wire_format!r}")
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = os.environ.get(api_key_env, "") if api_key_env else ""
        self.wire_format = wire_format
        self.timeout = timeout
        self.max_retries = max_retries

    def _request_body(self, texts: list) -> dict:
        if self.wire_format == "cohere":
            return {"model": self.model, "texts": texts}
        return {"model": self.model, "input": texts}

    def embed(self, texts: list) -> list:
        if not texts:
            raise ValidationError("texts", "must be non-empty")
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error = None
        for _ in range(self.max_retries + 1):
            try:
                response = requests.post(self.base_url, json=self._request_body(texts),
                                         headers=headers, timeout=self.timeout)
                response.raise_for_status()
                return self.parse(response.json())
            except (requests.RequestException, KeyError, ValueError, json.JSONDecodeError) as exc:
                last_error = exc
        raise ProviderError(f"embedding call failed: {last_error}",
                            failed_indices=list(range(len(texts))))

    def parse(self, payload: dict) -> list:
        return _PARSERS[self.wire_format](payload)
