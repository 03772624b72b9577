"""Rule-based slot extraction from user messages (Italian and English).

Rules run first and cover the common phrasings; a language-model fallback can
fill the gaps but everything it returns is validated against the same
invariants before acceptance.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import date as Date
from functools import lru_cache
from pathlib import Path

from ..textutil import fold

_RESOURCES = Path(__file__).resolve().parent.parent / "resources"


@dataclass
class SlotLexicons:
    tags: dict
    preference_markers: list
    restrictions: dict
    pace: dict
    accept: list
    download: list
    drop_verbs: list
    lock_verbs: list
    motion_verbs: list
    months_it: dict
    months_en: dict
    small_numbers: dict
    default_year: int = 2026

    @classmethod
    def load(cls, default_year: int = 2026) -> "SlotLexicons":
        data = _load_lexicon_file()
        return cls(default_year=default_year, **data)

    def months(self, language: str) -> dict:
        return self.months_it if language == "it" else self.months_en


@lru_cache(maxsize=1)
def _load_lexicon_file() -> dict:
    with open(_RESOURCES / "lexicon_slots.json", encoding="utf-8") as fh:
        return json.load(fh)


def _word_re(term: str) -> re.Pattern:
    return re.compile(r"(?<!\w)" + re.escape(term) + r"(?!\w)")


def _find_any(folded: str, terms: list) -> str | None:
    for term in terms:
        if _word_re(term).search(folded):
            return term
    return None


def _num(token: str, lex: SlotLexicons) -> int | None:
    if token.isdigit():
        return int(token)
    return lex.small_numbers.get(token)


_NUM_WORD = r"(\d+|un|uno|una|due|tre|quattro|cinque|sei|sette|otto|nove|dieci|one|two|three|four|five|six|seven|eight|nine|ten)"

_ADULTS_RE = re.compile(_NUM_WORD + r"\s+adult\w*")
_CHILDREN_RE = re.compile(_NUM_WORD + r"\s+(?:bambin\w*|child(?:ren)?|kids?|ragazz\w*|figli\w*)")
_MONTH_WORDS = (r"gennaio|febbraio|marzo|aprile|maggio|giugno|luglio|agosto|settembre|"
                r"ottobre|novembre|dicembre|january|february|march|april|may|june|july|"
                r"august|september|october|november|december")
_GROUP_RE = re.compile(r"(?:siamo in|siamo|we are|party of|group of|in)\s+" + _NUM_WORD
                       + r"(?:\s+(?:person[ei]|people|persons))?"
                       + r"(?!\s*(?:adult|bambin|child|kid|euro|notti|night|" + _MONTH_WORDS + r"))")
_SOLO_RE = re.compile(r"(?<!\w)(?:da sol[oa]|solo io|alone|just me|by myself)(?!\w)")
_COUPLE_RE = re.compile(r"(?<!\w)(?:coppia|couple)(?!\w)")

_BUDGET_KEYWORD_RE = re.compile(
    r"(?:budget|spendere|spesa|spending|spend|tetto|limite|limit)\D{0,24}?(\d+(?:[.,]\d{1,2})?)")
_BUDGET_CURRENCY_RE = re.compile(r"(\d+(?:[.,]\d{1,2})?)\s*(?:euro|eur|€)")
_BARE_NUMBER_RE = re.compile(r"^\D{0,16}?(\d+(?:[.,]\d{1,2})?)\D{0,16}$")

_ALLERGY_RE = re.compile(
    r"allerg\w*\s+(?:(?:alle|alla|agli|ai|al|a|to)\s+)?(?:the\s+)?([a-z]+)")

_ISO_PAIR_RE = re.compile(
    r"(\d{4}-\d{2}-\d{2})\s*(?:dal|al|a|to|until|fino al|->|→|/|e)\s*(\d{4}-\d{2}-\d{2})")
_SLASH_PAIR_RE = re.compile(
    r"(\d{1,2})/(\d{1,2})/(\d{4})\s*(?:al|a|to|until|-|->)\s*(\d{1,2})/(\d{1,2})/(\d{4})")
_NIGHTS_RE = re.compile(r"(\d+)\s+(?:notti|notte|nights?)")


def _parse_decimal(raw: str) -> float:
    return float(raw.replace(",", "."))


def _make_date(day: int, month: int, year: int) -> Date | None:
    try:
        return Date(year, month, day)
    except ValueError:
        return None


def _month_pattern(months: dict) -> str:
    names = sorted(months, key=len, reverse=True)
    return "(" + "|".join(names) + ")"


def _extract_dates(folded: str, language: str, lex: SlotLexicons):
    year_default = lex.default_year
    m = _ISO_PAIR_RE.search(folded)
    if m:
        try:
            start, end = Date.fromisoformat(m.group(1)), Date.fromisoformat(m.group(2))
        except ValueError:
            return None
        return (start, end) if end >= start else None
    m = _SLASH_PAIR_RE.search(folded)
    if m:
        d1, mo1, y1, d2, mo2, y2 = (int(g) for g in m.groups())
        start, end = _make_date(d1, mo1, y1), _make_date(d2, mo2, y2)
        if start and end and end >= start:
            return (start, end)
        return None

    month_pat = _month_pattern(lex.months(language))
    months = lex.months(language)
    if language == "it":
        # "dal 12 al 14 giugno 2026", "dal 12 giugno al 14 giugno 2026"
        pair = re.search(
            r"dal\s+(\d{1,2})(?:\s+" + month_pat + r")?(?:\s+(\d{4}))?"
            r"\s+al\s+(\d{1,2})\s+" + month_pat + r"(?:\s+(\d{4}))?", folded)
        if pair:
            d1, mo1, y1, d2, mo2, y2 = pair.groups()
            month2 = months[mo2]
            month1 = months[mo1] if mo1 else month2
            year2 = int(y2) if y2 else year_default
            year1 = int(y1) if y1 else year2
            start, end = _make_date(int(d1), month1, year1), _make_date(int(d2), month2, year2)
            if start and end and end >= start:
                return (start, end)
        single = re.search(r"(?:il|solo il)\s+(\d{1,2})\s+" + month_pat
                           + r"(?:\s+(\d{4}))?", folded)
        if single:
            day, mo, year = single.groups()
            date = _make_date(int(day), months[mo], int(year) if year else year_default)
            return (date, date) if date else None
    else:
        # "from june 12 to june 14, 2026" / "from june 12 to 14"
        pair = re.search(
            r"from\s+" + month_pat + r"\s+(\d{1,2})(?:,?\s+(\d{4}))?"
            r"\s+(?:to|until|through)\s+(?:" + month_pat + r"\s+)?(\d{1,2})(?:,?\s+(\d{4}))?",
            folded)
        if pair:
            mo1, d1, y1, mo2, d2, y2 = pair.groups()
            month1 = months[mo1]
            month2 = months[mo2] if mo2 else month1
            year2 = int(y2) if y2 else (int(y1) if y1 else year_default)
            year1 = int(y1) if y1 else year2
            start, end = _make_date(int(d1), month1, year1), _make_date(int(d2), month2, year2)
            if start and end and end >= start:
                return (start, end)
        # "from 12 to 14 june 2026"
        pair = re.search(
            r"from\s+(\d{1,2})\s+(?:to|until|through)\s+(\d{1,2})\s+" + month_pat
            + r"(?:,?\s+(\d{4}))?", folded)
        if pair:
            d1, d2, mo, year = pair.groups()
            y = int(year) if year else year_default
            start, end = _make_date(int(d1), months[mo], y), _make_date(int(d2), months[mo], y)
            if start and end and end >= start:
                return (start, end)
        single = re.search(r"(?:^|\bon\s+|\bjust\s+)" + month_pat + r"\s+(\d{1,2})"
                           + r"(?:,?\s+(\d{4}))?", folded)
        if single:
            mo, day, year = single.groups()
            date = _make_date(int(day), months[mo], int(year) if year else year_default)
            return (date, date) if date else None

    nights = _NIGHTS_RE.search(folded)
    if nights:
        start = _parse_single_date(folded, language, lex)
        if start:
            from datetime import timedelta
            return (start, start + timedelta(days=int(nights.group(1))))
    return None


def _parse_single_date(folded: str, language: str, lex: SlotLexicons) -> Date | None:
    m = re.search(r"(\d{4}-\d{2}-\d{2})", folded)
    if m:
        try:
            return Date.fromisoformat(m.group(1))
        except ValueError:
            return None
    m = re.search(r"(\d{1,2})/(\d{1,2})/(\d{4})", folded)
    if m:
        return _make_date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
    months = lex.months(language)
    month_pat = _month_pattern(months)
    if language == "it":
        m = re.search(r"(\d{1,2})\s+" + month_pat + r"(?:\s+(\d{4}))?", folded)
        if m:
            return _make_date(int(m.group(1)), months[m.group(2)],
                              int(m.group(3)) if m.group(3) else lex.default_year)
    else:
        m = re.search(month_pat + r"\s+(\d{1,2})(?:,?\s+(\d{4}))?", folded)
        if m:
            return _make_date(int(m.group(2)), months[m.group(1)],
                              int(m.group(3)) if m.group(3) else lex.default_year)
    return None


def _extract_party(folded: str, pending: str | None, lex: SlotLexicons):
    adults = None
    children = None
    m = _ADULTS_RE.search(folded)
    if m:
        adults = _num(m.group(1), lex)
    m = _CHILDREN_RE.search(folded)
    if m:
        children = _num(m.group(1), lex)
    if adults is not None:
        return (adults, children or 0)
    if children is not None:
        return None  # children without adults is ambiguous; re-ask
    if _SOLO_RE.search(folded):
        return (1, 0)
    if _COUPLE_RE.search(folded):
        return (2, 0)
    m = _GROUP_RE.search(folded)
    if m:
        n = _num(m.group(1), lex)
        if n:
            return (n, 0)
    if pending == "party":
        m = _BARE_NUMBER_RE.match(folded)
        if m and "." not in m.group(1) and "," not in m.group(1):
            n = int(m.group(1))
            if 1 <= n <= 40:
                return (n, 0)
    return None


def _extract_budget(folded: str, pending: str | None):
    m = _BUDGET_KEYWORD_RE.search(folded)
    if m:
        return _parse_decimal(m.group(1))
    m = _BUDGET_CURRENCY_RE.search(folded)
    if m:
        return _parse_decimal(m.group(1))
    if pending == "budget":
        m = _BARE_NUMBER_RE.match(folded)
        if m:
            return _parse_decimal(m.group(1))
    return None


def _extract_preferences(folded: str, pending: str | None, lex: SlotLexicons):
    if pending != "preferences" and not _find_any(folded, lex.preference_markers):
        return None
    weights = {}
    for tag, synonyms in lex.tags.items():
        if _find_any(folded, [fold(s) for s in synonyms]):
            weights[tag] = 1.0
    return weights or None


def _extract_restrictions(folded: str, lex: SlotLexicons):
    found = set()
    for restriction, synonyms in lex.restrictions.items():
        if _find_any(folded, [fold(s) for s in synonyms]):
            found.add(restriction)
    for m in _ALLERGY_RE.finditer(folded):
        found.add("allergy:" + m.group(1))
    return found or None


def _extract_pace(folded: str, lex: SlotLexicons):
    for pace, synonyms in lex.pace.items():
        if _find_any(folded, [fold(s) for s in synonyms]):
            return pace
    return None


_DEST_PATTERN = re.compile(
    r"(?:\b(?:a|in|to|verso|towards)\s+)"
    r"([A-ZÀ-Ý][\w'’]*(?:\s+(?:di|del|della|dei|delle|sul|sulla)\s+[A-ZÀ-Ý][\w'’]*|"
    r"\s+[A-ZÀ-Ý][\w'’]*)*)")
_GREETING_WORDS = frozenset({"ciao", "salve", "buongiorno", "buonasera", "hello", "hi",
                             "hey", "vorrei", "andare", "vacanza"})


def _extract_destination(message: str, folded: str, pending: str | None,
                         lex: SlotLexicons, known_destinations):
    month_names = set(lex.months_it) | set(lex.months_en)
    best = None
    for dest in known_destinations:
        if _word_re(fold(dest)).search(folded):
            if best is None or len(dest) > len(best):
                best = dest
    if best:
        return best
    allowed_context = pending == "destination" or _find_any(folded, lex.motion_verbs)
    if not allowed_context:
        return None
    for m in _DEST_PATTERN.finditer(message):
        candidate = m.group(1).strip()
        if fold(candidate).split()[0] in month_names:
            continue
        return candidate
    if pending == "destination":
        words = [w.strip(".,!?;:'\"") for w in message.split()]
        words = [w for w in words if w and fold(w) not in _GREETING_WORDS]
        if 0 < len(words) <= 4 and not any(any(ch.isdigit() for ch in w) for w in words):
            return " ".join(w[:1].upper() + w[1:] for w in words)
    return None


def extract_slots(message: str, pending_slot: str | None, language: str,
                  lexicons: SlotLexicons | None = None,
                  known_destinations=()) -> dict:
    """Deterministic rule pass over one user message.

    Returns only the slots that were confidently extracted; an empty dict
    means the state machine should re-ask.
    """
    lex = lexicons or SlotLexicons.load()
    folded = fold(message)
    updates: dict = {}

    dates = _extract_dates(folded, language, lex)
    if dates:
        updates["date_range"] = dates

    party = _extract_party(folded, pending_slot, lex)
    if party and party[0] >= 1:
        updates["party"] = party

    budget = _extract_budget(folded, pending_slot)
    if budget is not None and budget >= 0:
        updates["budget_total"] = budget

    preferences = _extract_preferences(folded, pending_slot, lex)
    if preferences:
        updates["preference_weights"] = preferences

    restrictions = _extract_restrictions(folded, lex)
    if restrictions:
        updates["restrictions"] = restrictions

    pace = _extract_pace(folded, lex)
    if pace:
        updates["pace"] = pace

    destination = _extract_destination(message, folded, pending_slot,
                                       lex, known_destinations)
    if destination:
        updates["destination"] = destination

    return updates
