"""Small text helpers shared across modules: normalization, tokens, edit distance."""

from __future__ import annotations

import re
import unicodedata

_WS = re.compile(r"\s+")


def fold(text: str) -> str:
    """Lowercase and strip accents: 'Caffè Pietà' -> 'caffe pieta'."""
    decomposed = unicodedata.normalize("NFD", text)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    return stripped.casefold()


def squash_ws(text: str) -> str:
    """Collapse whitespace runs to single spaces and trim."""
    return _WS.sub(" ", text).strip()


def tokens(text: str) -> list[str]:
    """Whitespace-delimited tokens; the unit used for chunk sizes and prompt budgets."""
    return text.split()


def edit_distance_at_most_one(a: str, b: str) -> bool:
    """True when Levenshtein distance between a and b is 0 or 1."""
    if a == b:
        return True
    la, lb = len(a), len(b)
    if abs(la - lb) > 1:
        return False
    if la > lb:
        a, b, la, lb = b, a, lb, la
    # la <= lb, difference 0 or 1: one pass with a single allowed edit
    i = j = 0
    edited = False
    while i < la and j < lb:
        if a[i] == b[j]:
            i += 1
            j += 1
            continue
        if edited:
            return False
        edited = True
        if la == lb:
            i += 1
            j += 1
        else:
            j += 1  # skip the extra char in the longer string
    return True
