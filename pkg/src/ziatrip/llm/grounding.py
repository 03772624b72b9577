"""Lexical grounding check: every entity-like mention must trace to known data.

The check is honest about what is verifiable offline — it matches mention
text against the allowed entity names (normalized, accent-folded, edit
distance at most 1) and reports everything else as ungrounded.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from ..textutil import edit_distance_at_most_one, fold

_RESOURCES = Path(__file__).resolve().parent.parent / "resources"

_TOKEN_RE = re.compile(r"[\w'’]+", re.UNICODE)
_QUOTE_RE = re.compile(r"[\"“«]([^\"”»]+)[\"”»]")
_SENTENCE_BREAK = frozenset(".!?:\n")

# lowercase words that may join capitalized words inside one proper name
_CONNECTORS = frozenset({"di", "del", "della", "dei", "delle", "degli", "da", "de",
                         "la", "le", "lo", "il", "of", "the", "d'", "dell'", "sul",
                         "sulla", "al", "alla"})


@dataclass
class Mention:
    text: str
    start: int
    end: int
    reason: str = ""

    def to_dict(self) -> dict:
        return {"text": self.text, "start": self.start, "end": self.end,
                "reason": self.reason}


@dataclass
class GroundingReport:
    ungrounded: list = field(default_factory=list)
    grounded_count: int = 0

    @property
    def ok(self) -> bool:
        return not self.ungrounded


@lru_cache(maxsize=1)
def _stopwords() -> frozenset:
    with open(_RESOURCES / "grounding_stopwords.json", encoding="utf-8") as fh:
        return frozenset(json.load(fh)["stopwords"])


def _is_cap(token: str) -> bool:
    return token[:1].isupper()


def _extract_mentions(text: str) -> list:
    """Quoted spans plus capitalized phrases (sentence-initial single words skipped)."""
    mentions = []
    for match in _QUOTE_RE.finditer(text):
        mentions.append(Mention(match.group(1).strip(), match.start(1), match.end(1)))

    tokens = [(m.group(0), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]

    def sentence_initial(i: int) -> bool:
        if i == 0:
            return True
        gap = text[tokens[i - 1][2]:tokens[i][1]]
        return any(ch in _SENTENCE_BREAK for ch in gap)

    def contiguous(i: int) -> bool:
        gap = text[tokens[i - 1][2]:tokens[i][1]]
        return gap.strip() == "" and "\n" not in gap

    i = 0
    n = len(tokens)
    while i < n:
        token, start, end = tokens[i]
        if not _is_cap(token) or token.isdigit():
            i += 1
            continue
        phrase_start = i
        j = i
        while j + 1 < n:
            nxt, _, _ = tokens[j + 1]
            if not contiguous(j + 1):
                break
            if _is_cap(nxt) and not nxt.isdigit():
                j += 1
                continue
            if nxt.lower() in _CONNECTORS and j + 2 < n and contiguous(j + 2) \
                    and _is_cap(tokens[j + 2][0]):
                j += 2
                continue
            break
        single = j == phrase_start
        if single and sentence_initial(phrase_start):
            i = j + 1
            continue
        phrase_text = text[tokens[phrase_start][1]:tokens[j][2]]
        mentions.append(Mention(phrase_text, tokens[phrase_start][1], tokens[j][2]))
        i = j + 1
    return mentions


def verify_grounding(text: str, allowed_entities: set | frozenset,
                     extra_stopwords: set | frozenset = frozenset()) -> GroundingReport:
    """Flag entity-like mentions that match no allowed entity."""
    allowed_folded = [fold(e) for e in allowed_entities]
    stop = _stopwords() | {fold(w) for w in extra_stopwords}
    report = GroundingReport()
    for mention in _extract_mentions(text):
        folded = fold(mention.text)
        if not folded or folded in stop:
            continue
        if any(edit_distance_at_most_one(folded, entity) for entity in allowed_folded):
            report.grounded_count += 1
            continue
        mention.reason = "no matching entity"
        report.ungrounded.append(mention)
    return report
