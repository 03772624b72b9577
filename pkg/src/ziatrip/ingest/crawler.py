"""Polite breadth-first crawler over the seed hosts, with an offline fixture mode.

Politeness: robots.txt exclusion and a per-host minimum delay between
requests. Every request lands in the RequestLog so runs can be audited.
"""

from __future__ import annotations

import logging
import re
import time
import urllib.robotparser
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import urljoin, urlsplit, urlunsplit

import requests

from .documents import KnowledgeDocument
from .extract import extract_text

logger = logging.getLogger(__name__)

FIXTURE_TIMESTAMP = "2000-01-01T00:00:00+00:00"

_HREF_RE = re.compile(r"""<a\s[^>]*href\s*=\s*["']([^"'#]+)["']""", re.IGNORECASE)


@dataclass
class RequestLog:
    entries: list = field(default_factory=list)  # (monotonic_ts, url, host, status)

    def record(self, ts: float, url: str, host: str, status: int) -> None:
        self.entries.append((ts, url, host, status))

    def hosts(self) -> set:
        return {host for _, _, host, _ in self.entries}

    def min_spacing_per_host(self) -> dict:
        last: dict = {}
        spacing: dict = {}
        for ts, _, host, _ in self.entries:
            if host in last:
                gap = ts - last[host]
                spacing[host] = min(spacing.get(host, gap), gap)
            last[host] = ts
        return spacing


class HttpFetcher:
    def __init__(self, user_agent: str, timeout: float = 15.0):
        self.user_agent = user_agent
        self.timeout = timeout

    def fetch(self, url: str):
        """(status, body bytes, fetched_at iso). Raises on transport failure."""
        response = requests.get(url, headers={"User-Agent": self.user_agent},
                                timeout=self.timeout)
        from datetime import datetime, timezone
        return (response.status_code, response.content,
                datetime.now(timezone.utc).isoformat())


class FixtureFetcher:
    """Serves files from a directory as if it were a website.

    URL path / maps to index.html; /x maps to x (or x.html). The fetched_at
    timestamp is constant so fixture ingestion runs are byte-identical.
    """

    def __init__(self, host_dirs: dict):
        self.host_dirs = {host: Path(path) for host, path in host_dirs.items()}

    def fetch(self, url: str):
        parts = urlsplit(url)
        base = self.host_dirs.get(parts.netloc)
        if base is None:
            return (502, b"", FIXTURE_TIMESTAMP)
        rel = parts.path.lstrip("/") or "index.html"
        candidate = base / rel
        if candidate.is_dir():
            candidate = candidate / "index.html"
        if not candidate.exists() and not candidate.suffix:
            candidate = candidate.with_suffix(".html")
        if not candidate.exists():
            return (404, b"", FIXTURE_TIMESTAMP)
        return (200, candidate.read_bytes(), FIXTURE_TIMESTAMP)


def _normalize_url(url: str) -> str:
    parts = urlsplit(url)
    path = parts.path or "/"
    return urlunsplit((parts.scheme, parts.netloc, path, parts.query, ""))


def extract_links(base_url: str, html_bytes: bytes) -> list:
    try:
        text = html_bytes.decode("utf-8")
    except UnicodeDecodeError:
        text = html_bytes.decode("utf-8", errors="replace")
    links = []
    for match in _HREF_RE.finditer(text):
        href = match.group(1).strip()
        if href.startswith(("mailto:", "javascript:", "tel:")):
            continue
        links.append(_normalize_url(urljoin(base_url, href)))
    return links


class Crawler:
    def __init__(self, fetcher, delay_seconds: float = 1.0,
                 clock=time.monotonic, sleep=time.sleep):
        self.fetcher = fetcher
        self.delay_seconds = delay_seconds
        self.clock = clock
        self.sleep = sleep
        self.log = RequestLog()
        self._last_request: dict = {}
        self._robots: dict = {}

    def _polite_fetch(self, url: str):
        host = urlsplit(url).netloc
        now = self.clock()
        last = self._last_request.get(host)
        if last is not None:
            wait = self.delay_seconds - (now - last)
            if wait > 0:
                self.sleep(wait)
        try:
            status, body, fetched_at = self.fetcher.fetch(url)
        except Exception as exc:
            status, body, fetched_at = (599, b"", FIXTURE_TIMESTAMP)
            logger.warning("fetch failed for %s: %s", url, exc)
        ts = self.clock()
        self._last_request[host] = ts
        self.log.record(ts, url, host, status)
        return status, body, fetched_at

    def _robots_for(self, url: str) -> urllib.robotparser.RobotFileParser:
        parts = urlsplit(url)
        host = parts.netloc
        if host in self._robots:
            return self._robots[host]
        robots_url = urlunsplit((parts.scheme, host, "/robots.txt", "", ""))
        parser = urllib.robotparser.RobotFileParser()
        status, body, _ = self._polite_fetch(robots_url)
        if status == 200:
            parser.parse(body.decode("utf-8", errors="replace").splitlines())
        else:
            parser.parse([])  # no robots file: everything allowed
        self._robots[host] = parser
        return parser

    def crawl(self, seed_urls: list, max_pages: int, max_depth: int):
        """Breadth-first crawl restricted to the seed hosts.

        Returns (documents, skips). Limits terminate the run normally.
        """
        seeds = [_normalize_url(u) for u in seed_urls]
        allowed_hosts = {urlsplit(u).netloc for u in seeds}
        queue = [(url, 0) for url in seeds]
        enqueued = set(seeds)
        documents = []
        skips = []
        fetched_pages = 0

        while queue and fetched_pages < max_pages:
            url, depth = queue.pop(0)
            host = urlsplit(url).netloc
            if host not in allowed_hosts:
                continue
            robots = self._robots_for(url)
            if not robots.can_fetch("*", url):
                skips.append({"uri": url, "reason": "robots"})
                continue
            status, body, fetched_at = self._polite_fetch(url)
            fetched_pages += 1
            if status != 200:
                skips.append({"uri": url, "reason": f"status:{status}"})
                continue
            title, body_text = extract_text(body, uri=url)
            if not body_text:
                skips.append({"uri": url, "reason": "empty"})
            else:
                documents.append(KnowledgeDocument.build(
                    "crawl", url, title, body_text, fetched_at))
            if depth < max_depth:
                for link in extract_links(url, body):
                    if urlsplit(link).netloc not in allowed_hosts:
                        continue
                    if link in enqueued:
                        continue
                    enqueued.add(link)
                    queue.append((link, depth + 1))
        return documents, skips
