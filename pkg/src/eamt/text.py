"""Small text helpers shared across the pipeline.

Span conventions: all spans handed around between modules are byte offsets
into the UTF-8 encoding of the string they refer to, stored as half-open
``(start, end)`` pairs.
"""

from __future__ import annotations

import re


def collapse_spaces(text: str) -> str:
    """Collapse runs of Unicode whitespace to single spaces and trim."""
    return " ".join(text.split())


def token_spans(text: str) -> list[tuple[int, int]]:
    """Character spans of whitespace-delimited tokens, in order."""
    return [(m.start(), m.end()) for m in re.finditer(r"\S+", text)]


def char_span_to_bytes(text: str, start: int, end: int) -> tuple[int, int]:
    """Convert a character span on ``text`` to a UTF-8 byte span."""
    prefix = len(text[:start].encode("utf-8"))
    return prefix, prefix + len(text[start:end].encode("utf-8"))


def byte_slice(text: str, span: tuple[int, int]) -> str:
    """Slice ``text`` by a UTF-8 byte span."""
    return text.encode("utf-8")[span[0]:span[1]].decode("utf-8")
