"""POI catalog: line-delimited JSON persistence, candidate queries.

Reads are lock-free over an immutable snapshot dict; writes take the
single-writer lock and swap the snapshot.
"""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path

from ..textutil import fold
from .models import Poi

logger = logging.getLogger(__name__)


class PoiCatalog:
    def __init__(self, pois: list | None = None):
        self._lock = threading.Lock()
        self._pois: dict = {}
        for poi in pois or []:
            self.upsert(poi)

    def __len__(self) -> int:
        return len(self._pois)

    def get(self, poi_id: str) -> Poi | None:
        return self._pois.get(poi_id)

    def all_pois(self) -> list:
        return sorted(self._pois.values(), key=lambda p: p.id)

    def upsert(self, poi: Poi) -> Poi:
        """Insert or replace by id; identical input is a no-op by value."""
        poi.validate()
        with self._lock:
            snapshot = dict(self._pois)
            snapshot[poi.id] = poi
            self._pois = snapshot
        return poi

    def find_pois(self, destination: str, tags: set | frozenset = frozenset(),
                  limit: int = 50) -> list:
        """POIs at the destination whose tags intersect ``tags``.

        Empty ``tags`` matches everything. Ordering is (matching tag count
        desc, id asc), truncated to ``limit``.
        """
        dest = fold(destination)
        wanted = frozenset(tags)
        scored = []
        for poi in self._pois.values():
            if fold(poi.destination) != dest:
                continue
            overlap = len(poi.category_tags & wanted)
            if wanted and overlap == 0:
                continue
            scored.append((-overlap, poi.id, poi))
        scored.sort(key=lambda item: (item[0], item[1]))
        return [poi for _, _, poi in scored[:limit]]

    def destinations(self) -> list:
        return sorted({p.destination for p in self._pois.values() if p.destination})

    def known_tags(self) -> list:
        tags: set = set()
        for poi in self._pois.values():
            tags |= poi.category_tags
        return sorted(tags)

    # --- persistence: UTF-8, one JSON object per line ---

    def save(self, path: str | Path) -> None:
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            for poi in self.all_pois():
                fh.write(json.dumps(poi.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | Path) -> "PoiCatalog":
        catalog = cls()
        path = Path(path)
        if not path.exists():
            logger.warning("catalog file %s missing, starting empty", path)
            return catalog
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    catalog.upsert(Poi.from_dict(json.loads(line)))
                except (json.JSONDecodeError, ValueError) as exc:
                    logger.warning("skipping catalog line %d: %s", line_no, exc)
        return catalog
