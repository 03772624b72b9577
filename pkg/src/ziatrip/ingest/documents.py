"""Normalized documents and sliding-window chunking."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from ..errors import ValidationError
from ..textutil import squash_ws, tokens

SOURCES = ("directory", "crawl", "site_export", "events_feed")

_IT_MARKERS = frozenset("""il lo la gli le di del della dei da per con una uno che
non sono questo questa più molto anche come dove essere viene presso storia antica
borgo castello chiesa centro tra cui alla alle negli nella sui""".split())
_EN_MARKERS = frozenset("""the of and to in is are was were this that with for from
his her they have has been its more very also where when which town church castle
history old center between""".split())


def detect_language(text: str) -> str:
    words = [w.strip(".,;:!?\"'()").lower() for w in text.split()]
    hits_it = sum(1 for w in words if w in _IT_MARKERS)
    hits_en = sum(1 for w in words if w in _EN_MARKERS)
    if hits_it > hits_en and hits_it >= 2:
        return "it"
    if hits_en > hits_it and hits_en >= 2:
        return "en"
    return "unknown"


def make_doc_id(source: str, uri: str) -> str:
    return hashlib.sha256(f"{source}\n{uri}".encode("utf-8")).hexdigest()[:16]


@dataclass
class KnowledgeDocument:
    doc_id: str
    source: str
    uri: str
    title: str
    body: str
    language: str
    fetched_at: str

    @classmethod
    def build(cls, source: str, uri: str, title: str, body: str,
              fetched_at: str) -> "KnowledgeDocument":
        if source not in SOURCES:
            raise ValidationError("source", f"unknown source {source!r}")
        body = squash_ws(body)
        if not body:
            raise ValidationError("body", "empty after normalization")
        return cls(
            doc_id=make_doc_id(source, uri),
            source=source,
            uri=uri,
            title=squash_ws(title) or uri,
            body=body,
            language=detect_language(body),
            fetched_at=fetched_at,
        )

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id, "source": self.source, "uri": self.uri,
            "title": self.title, "body": self.body, "language": self.language,
            "fetched_at": self.fetched_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KnowledgeDocument":
        return cls(**{k: data[k] for k in
                      ("doc_id", "source", "uri", "title", "body", "language", "fetched_at")})


@dataclass
class Chunk:
    chunk_id: str
    text: str
    token_count: int
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"chunk_id": self.chunk_id, "text": self.text,
                "token_count": self.token_count, "metadata": self.metadata}

    @classmethod
    def from_dict(cls, data: dict) -> "Chunk":
        return cls(data["chunk_id"], data["text"], data["token_count"],
                   dict(data.get("metadata", {})))


def chunk(doc: KnowledgeDocument, max_tokens: int = 400, overlap: int = 80) -> list:
    """Sliding window over whitespace tokens with stride max_tokens - overlap."""
    if not 0 <= overlap < max_tokens:
        raise ValidationError("overlap", f"{overlap} must satisfy 0 <= overlap < {max_tokens}")
    words = tokens(doc.body)
    metadata = {"source": doc.source, "uri": doc.uri, "title": doc.title,
                "language": doc.language}
    stride = max_tokens - overlap
    chunks = []
    start = 0
    seq = 0
    total = len(words)
    while True:
        window = words[start:start + max_tokens]
        if not window:
            break
        chunks.append(Chunk(
            chunk_id=f"{doc.doc_id}:{seq}",
            text=" ".join(window),
            token_count=len(window),
            metadata=dict(metadata),
        ))
        if start + max_tokens >= total:
            break
        start += stride
        seq += 1
    return chunks


def dedup(chunks: list) -> list:
    """Collapse chunks with identical whitespace-normalized text, keeping the first."""
    seen = set()
    out = []
    for item in chunks:
        key = squash_ws(item.text)
        if key in seen:
            continue
        seen.add(key)
        out.append(item)
    return out
