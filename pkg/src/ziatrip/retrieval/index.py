"""Exact flat cosine index over chunk embeddings.

Corpus scale (one region's tourism content) keeps exact search fast, and a
flat index makes the brute-force oracle comparison meaningful. Queries read
an immutable snapshot; writers rebuild and swap it atomically.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ValidationError
from .embeddings import EmbeddingVector

SNAPSHOT_VERSION = 1


@dataclass
class IndexEntry:
    chunk_id: str
    vector: EmbeddingVector
    metadata: dict = field(default_factory=dict)


@dataclass
class RetrievalHit:
    chunk_id: str
    score: float
    metadata: dict = field(default_factory=dict)


class _Snapshot:
    def __init__(self, entries: dict, dim: int):
        self.entries = entries          # chunk_id -> IndexEntry
        self.order = sorted(entries)    # stable id order
        if entries:
            rows = []
            for chunk_id in self.order:
                values = np.asarray(entries[chunk_id].vector.values, dtype=np.float64)
                norm = np.linalg.norm(values)
                rows.append(values / norm if norm > 0 else values)
            self.matrix = np.vstack(rows)
        else:
            self.matrix = np.zeros((0, dim), dtype=np.float64)


class VectorIndex:
    def __init__(self, dim: int, embedder=None):
        if dim <= 0:
            raise ValidationError("dim", "must be > 0")
        self.dim = dim
        self.embedder = embedder
        self._lock = threading.Lock()
        self._snapshot = _Snapshot({}, dim)

    def __len__(self) -> int:
        return len(self._snapshot.entries)

    def add(self, entries: list) -> int:
        """Add (or replace by chunk_id) entries; returns how many were added new."""
        with self._lock:
            current = dict(self._snapshot.entries)
            added = 0
            for entry in entries:
                entry.vector.validate()
                if entry.vector.dim != self.dim:
                    raise ValidationError(
                        "vector", f"dim {entry.vector.dim} != index dim {self.dim}")
                if entry.chunk_id not in current:
                    added += 1
                current[entry.chunk_id] = entry
            self._snapshot = _Snapshot(current, self.dim)
            return added

    def query_vector(self, vector: EmbeddingVector, k: int, metadata_filter=None) -> list:
        if k < 1:
            raise ValidationError("k", "must be >= 1")
        snap = self._snapshot
        if not snap.order:
            return []
        values = np.asarray(vector.values, dtype=np.float64)
        norm = np.linalg.norm(values)
        if norm > 0:
            values = values / norm
        scores = snap.matrix @ values
        hits = []
        for pos, chunk_id in enumerate(snap.order):
            entry = snap.entries[chunk_id]
            if metadata_filter is not None and not metadata_filter(entry.metadata):
                continue
            hits.append(RetrievalHit(chunk_id, float(scores[pos]), dict(entry.metadata)))
        hits.sort(key=lambda h: (-h.score, h.chunk_id))
        return hits[:k]

    def query(self, text: str, k: int, metadata_filter=None) -> list:
        if self.embedder is None:
            raise ValidationError("embedder", "no embedding provider configured")
        vector = self.embedder.embed([text])[0]
        return self.query_vector(vector, k, metadata_filter)

    # --- persistence: versioned JSON snapshot ---

    def save(self, path: str | Path) -> None:
        snap = self._snapshot
        payload = {
            "version": SNAPSHOT_VERSION,
            "dim": self.dim,
            "entries": [
                {
                    "chunk_id": chunk_id,
                    "vector": list(snap.entries[chunk_id].vector.values),
                    "metadata": snap.entries[chunk_id].metadata,
                }
                for chunk_id in snap.order
            ],
        }
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False, sort_keys=True)
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | Path, embedder=None) -> "VectorIndex":
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        version = payload.get("version")
        if version != SNAPSHOT_VERSION:
            raise ValidationError("version", f"unsupported index snapshot version {version!r}")
        index = cls(int(payload["dim"]), embedder=embedder)
        entries = [IndexEntry(row["chunk_id"],
                              EmbeddingVector(tuple(float(x) for x in row["vector"])),
                              dict(row.get("metadata", {})))
                   for row in payload["entries"]]
        if entries:
            index.add(entries)
        return index
