"""Supervised one-off ingestion runs: directory, site export, events feed.

Every run produces (documents, skips); build_manifest turns them into the
JSON manifest consumed by the index builder. Failures never abort a run —
they land in the skip report.
"""

from __future__ import annotations

import json
import logging
from datetime import datetime, timezone
from pathlib import Path

from .documents import Chunk, KnowledgeDocument, chunk, dedup
from .extract import extract_text

logger = logging.getLogger(__name__)

SUPPORTED_SUFFIXES = (".html", ".htm", ".txt", ".md")


def _mtime_iso(path: Path) -> str:
    return datetime.fromtimestamp(path.stat().st_mtime, tz=timezone.utc).isoformat()


def ingest_directory(path: str | Path) -> tuple:
    """One document per supported file, ordered by path. Returns (documents, skips)."""
    root = Path(path)
    documents = []
    skips = []
    for file_path in sorted(root.rglob("*")):
        if not file_path.is_file():
            continue
        rel = file_path.relative_to(root).as_posix()
        if file_path.suffix.lower() not in SUPPORTED_SUFFIXES:
            skips.append({"uri": rel, "reason": "unsupported_format"})
            continue
        try:
            raw = file_path.read_bytes()
            title, body = extract_text(raw, uri=rel)
            if not body:
                skips.append({"uri": rel, "reason": "empty"})
                continue
            documents.append(KnowledgeDocument.build(
                "directory", rel, title, body, _mtime_iso(file_path)))
        except Exception as exc:
            logger.warning("skipping %s: %s", rel, exc)
            skips.append({"uri": rel, "reason": f"error:{type(exc).__name__}"})
    return documents, skips


def ingest_export(dump_path: str | Path) -> tuple:
    """Site-export ingestion: a directory of HTML files or a JSON post list.

    The JSON form is a list of {"title", "content", "url"} objects (content
    may be HTML).
    """
    dump = Path(dump_path)
    if dump.is_dir():
        documents, skips = ingest_directory(dump)
        for doc in documents:
            doc.source = "site_export"
            doc.doc_id = _rehash(doc)
        return documents, skips
    documents = []
    skips = []
    try:
        posts = json.loads(dump.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        return [], [{"uri": str(dump), "reason": f"error:{type(exc).__name__}"}]
    stamp = _mtime_iso(dump)
    for i, post in enumerate(posts):
        uri = str(post.get("url") or f"{dump.name}#{i}")
        try:
            title, body = extract_text(post.get("content", ""), uri=uri)
            title = post.get("title") or title
            if not body:
                skips.append({"uri": uri, "reason": "empty"})
                continue
            documents.append(KnowledgeDocument.build("site_export", uri, title, body, stamp))
        except Exception as exc:
            logger.warning("skipping export post %s: %s", uri, exc)
            skips.append({"uri": uri, "reason": f"error:{type(exc).__name__}"})
    return documents, skips


def ingest_events_feed(feed_path: str | Path, enabled: bool = False) -> tuple:
    """Events-feed polling connector (disabled by default).

    The feed is a JSON list of {"id", "title", "description", "date"}
    events; the schema stays generic until the upstream database is defined.
    """
    if not enabled:
        return [], [{"uri": str(feed_path), "reason": "connector_disabled"}]
    feed = Path(feed_path)
    documents = []
    skips = []
    try:
        events = json.loads(feed.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        return [], [{"uri": str(feed), "reason": f"error:{type(exc).__name__}"}]
    stamp = _mtime_iso(feed)
    for i, event in enumerate(events):
        uri = str(event.get("id") or f"{feed.name}#{i}")
        body = " ".join(str(event.get(k, "")) for k in ("title", "description", "date"))
        try:
            documents.append(KnowledgeDocument.build(
                "events_feed", uri, str(event.get("title", uri)), body, stamp))
        except Exception as exc:
            skips.append({"uri": uri, "reason": f"error:{type(exc).__name__}"})
    return documents, skips


def _rehash(doc: KnowledgeDocument) -> str:
    from .documents import make_doc_id
    return make_doc_id(doc.source, doc.uri)


def build_manifest(documents: list, skips: list, max_tokens: int = 400,
                   overlap: int = 80) -> dict:
    """Chunk all documents and assemble the manifest structure."""
    all_chunks: list = []
    for doc in documents:
        all_chunks.extend(chunk(doc, max_tokens=max_tokens, overlap=overlap))
    all_chunks = dedup(all_chunks)
    return {
        "documents": [doc.to_dict() for doc in documents],
        "chunks": [c.to_dict() for c in all_chunks],
        "skips": list(skips),
    }


def write_manifest(manifest: dict, out_path: str | Path) -> None:
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = out.with_suffix(out.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, ensure_ascii=False, sort_keys=True, indent=1)
    tmp.replace(out)


def load_manifest(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def manifest_chunks(manifest: dict) -> list:
    return [Chunk.from_dict(c) for c in manifest["chunks"]]
