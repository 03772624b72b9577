"""Plain-text extraction from HTML (or passthrough for text formats)."""

from __future__ import annotations

from html.parser import HTMLParser

from ..textutil import squash_ws

_SKIP_TAGS = frozenset({"script", "style", "nav", "header", "footer", "aside",
                        "noscript", "template", "form", "button"})
_BLOCK_TAGS = frozenset({"p", "div", "section", "article", "li", "ul", "ol", "table",
                         "tr", "br", "h1", "h2", "h3", "h4", "h5", "h6", "blockquote"})
_HEADING_TAGS = ("h1", "h2", "h3", "h4", "h5", "h6")


class _TextCollector(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list = []
        self.title = ""
        self.first_heading = ""
        self._skip_depth = 0
        self._in_title = False
        self._heading: str | None = None

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag == "title":
            self._in_title = True
        elif tag in _HEADING_TAGS and not self.first_heading:
            self._heading = ""
        if tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag == "title":
            self._in_title = False
        elif tag in _HEADING_TAGS and self._heading is not None:
            self.first_heading = squash_ws(self._heading)
            self._heading = None
        if tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if self._in_title:
            self.title += data
            return
        if self._skip_depth:
            return
        if self._heading is not None:
            self._heading += data
        self.parts.append(data)


def _decode(raw: bytes | str) -> str:
    if isinstance(raw, str):
        return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        return raw.decode("utf-8", errors="replace")


def extract_text(raw: bytes | str, uri: str = "") -> tuple:
    """(title, body) with markup and boilerplate removed, whitespace normalized.

    Title falls back document title -> first heading -> uri. An empty body
    signals the document should be rejected (skip reason "empty").
    """
    text = _decode(raw)
    if "<" not in text or ">" not in text:
        return (uri, squash_ws(text))
    parser = _TextCollector()
    parser.feed(text)
    parser.close()
    body = squash_ws(" ".join(parser.parts))
    title = squash_ws(parser.title) or parser.first_heading or uri
    return (title, body)
