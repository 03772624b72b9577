from .documents import KnowledgeDocument, Chunk, chunk, dedup, make_doc_id, detect_language
from .extract import extract_text
from .crawler import Crawler, FixtureFetcher, HttpFetcher, RequestLog
from .pipeline import (ingest_directory, ingest_export, ingest_events_feed,
                       build_manifest, write_manifest)

__all__ = [
    "KnowledgeDocument", "Chunk", "chunk", "dedup", "make_doc_id", "detect_language",
    "extract_text", "Crawler", "FixtureFetcher", "HttpFetcher", "RequestLog",
    "ingest_directory", "ingest_export", "ingest_events_feed",
    "build_manifest", "write_manifest",
]
