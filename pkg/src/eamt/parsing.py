"""Decomposition of raw model generations back into structured parts.

A well-formed generation follows the three-part grammar emitted by the
builder.  Real model output drifts, so parsing is lenient by default: any
string is accepted, structural defects are flagged rather than raised, and
the clean translation is always free of separator and boundary-tag literals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import IO, Iterable

from .builder import ENTITY_CLOSE, ENTITY_OPEN, SEP
from .text import collapse_spaces

__all__ = [
    "Structure",
    "ParsedGeneration",
    "GenerationRecord",
    "MalformedGeneration",
    "parse_generation",
    "strip_entity_tags",
    "read_generations",
    "parsed_to_dict",
]


class Structure(str, Enum):
    WELL_FORMED = "well_formed"
    MISSING_SEPARATOR = "missing_separator"
    RAGGED_PARTS = "ragged_parts"
    UNBALANCED_TAGS = "unbalanced_tags"


class MalformedGeneration(ValueError):
    """Raised in strict mode for any structure other than well_formed."""

    def __init__(self, structure: Structure):
        super().__init__(f"malformed generation: {structure.value}")
        self.structure = structure


@dataclass(frozen=True)
class ParsedGeneration:
    """A model generation split into its three parts plus the clean result."""

    ner_mentions: tuple[str, ...]
    entity_translations: tuple[str, ...]
    tagged_translation: str
    clean_translation: str
    predicted_entities: tuple[tuple[str, str], ...]
    structure: Structure
    mention_spans: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class GenerationRecord:
    """One line of a generations file."""

    entry_id: str
    generation: str
    target_index: int | None = None


def strip_entity_tags(text: str) -> tuple[str, list[tuple[int, int]]]:
    """Remove boundary tags (with their single pad spaces) and normalize whitespace.

    The builder pads tags on the inside ("<entity> X </entity>"), so the
    removal unit is the open tag plus one following space and the close tag
    plus one preceding space; this makes stripping invert tagging exactly,
    including for mentions abutting punctuation.  Unpadded tags are removed
    as-is.  Returns the cleaned text plus byte spans locating each formerly
    tagged mention inside it.  A nested open tag is treated as noise, and an
    open tag with no close runs to the end of the text; both still yield a
    best-effort span.
    """
    raw_parts: list[str] = []
    raw_len = 0
    spans_raw: list[tuple[int, int]] = []
    open_at: int | None = None
    cursor = 0
    while cursor < len(text):
        next_open = text.find(ENTITY_OPEN, cursor)
        next_close = text.find(ENTITY_CLOSE, cursor)
        if next_open < 0 and next_close < 0:
            raw_parts.append(text[cursor:])
            raw_len += len(text) - cursor
            break
        if next_close < 0 or (0 <= next_open < next_close):
            segment = text[cursor:next_open]
            raw_parts.append(segment)
            raw_len += len(segment)
            if open_at is None:
                open_at = raw_len
            cursor = next_open + len(ENTITY_OPEN)
            if cursor < len(text) and text[cursor] == " ":
                cursor += 1  # the tag's inner pad
        else:
            segment = text[cursor:next_close]
            if segment.endswith(" "):
                segment = segment[:-1]  # the tag's inner pad
            raw_parts.append(segment)
            raw_len += len(segment)
            if open_at is not None:
                spans_raw.append((open_at, raw_len))
                open_at = None
            cursor = next_close + len(ENTITY_CLOSE)
    if open_at is not None:
        spans_raw.append((open_at, raw_len))
    raw = "".join(raw_parts)

    # Collapse whitespace while remapping raw offsets into the clean string.
    clean_chars: list[str] = []
    new_pos: list[int] = []  # raw index -> clean index of the surviving char, -1 if dropped
    pending_space = False
    for ch in raw:
        if ch.isspace():
            pending_space = bool(clean_chars)
            new_pos.append(-1)
            continue
        if pending_space:
            clean_chars.append(" ")
            pending_space = False
        new_pos.append(len(clean_chars))
        clean_chars.append(ch)
    clean = "".join(clean_chars)

    spans: list[tuple[int, int]] = []
    for s, e in spans_raw:
        mapped = [new_pos[i] for i in range(s, min(e, len(raw))) if new_pos[i] >= 0]
        if not mapped:
            continue
        lo, hi = min(mapped), max(mapped) + 1
        prefix = len(clean[:lo].encode("utf-8"))
        spans.append((prefix, prefix + len(clean[lo:hi].encode("utf-8"))))

    # Pathological input can fuse text across a removed tag into a fresh tag
    # literal ("<ent<entity>ity>"); scrub until none remain.  Spans stay
    # best-effort on that path.
    while ENTITY_OPEN in clean or ENTITY_CLOSE in clean:
        clean = collapse_spaces(clean.replace(ENTITY_OPEN, " ").replace(ENTITY_CLOSE, " "))
        limit = len(clean.encode("utf-8"))
        spans = [(min(s, limit), min(e, limit)) for s, e in spans if s < limit]
    return clean, spans


def _split_mentions(part: str) -> tuple[str, ...]:
    if not part.strip():
        return ()
    return tuple(m.strip() for m in part.split("|"))


def parse_generation(text: str, strict: bool = False) -> ParsedGeneration:
    """Parse one raw generation; never raises in lenient mode.

    Splits on the first two separator occurrences; later ones stay inside the
    translation part and are removed with the tags.  When fewer than two
    separators exist the whole text is treated as the translation part.
    Structural defects are reported in priority order: missing separator,
    then ragged mention lists, then unbalanced tags.
    """
    parts = text.split(SEP, 2)
    if len(parts) == 3:
        head1, head2, tail = parts
        missing = False
    else:
        head1, head2, tail = "", "", text
        missing = True
    ner = _split_mentions(head1)
    translations = _split_mentions(head2)
    balanced = tail.count(ENTITY_OPEN) == tail.count(ENTITY_CLOSE)
    tail = tail.replace(SEP, " ")
    clean, spans = strip_entity_tags(tail)
    while SEP in clean:  # tag removal can fuse text into a separator literal
        clean = collapse_spaces(clean.replace(SEP, " "))
        limit = len(clean.encode("utf-8"))
        spans = [(min(s, limit), min(e, limit)) for s, e in spans if s < limit]

    if missing:
        structure = Structure.MISSING_SEPARATOR
    elif len(ner) != len(translations):
        structure = Structure.RAGGED_PARTS
    elif not balanced:
        structure = Structure.UNBALANCED_TAGS
    else:
        structure = Structure.WELL_FORMED
    if strict and structure is not Structure.WELL_FORMED:
        raise MalformedGeneration(structure)

    predicted = tuple(zip(ner, translations)) if len(ner) == len(translations) else ()
    return ParsedGeneration(
        ner_mentions=ner,
        entity_translations=translations,
        tagged_translation=collapse_spaces(tail),
        clean_translation=clean,
        predicted_entities=predicted,
        structure=structure,
        mention_spans=tuple(spans),
    )


def read_generations(stream: IO) -> list[GenerationRecord]:
    """Read a generations JSONL file: entry_id, optional target_index, generation."""
    records = []
    for lineno, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            index = raw.get("target_index")
            records.append(
                GenerationRecord(
                    entry_id=str(raw["entry_id"]),
                    generation=str(raw["generation"]),
                    target_index=int(index) if index is not None else None,
                )
            )
        except (KeyError, ValueError) as exc:
            raise ValueError(f"generations line {lineno}: {exc}") from None
    return records


def parsed_to_dict(parsed: ParsedGeneration) -> dict:
    return {
        "ner_mentions": list(parsed.ner_mentions),
        "entity_translations": list(parsed.entity_translations),
        "tagged_translation": parsed.tagged_translation,
        "clean_translation": parsed.clean_translation,
        "predicted_entities": [list(p) for p in parsed.predicted_entities],
        "structure": parsed.structure.value,
        "mention_spans": [list(s) for s in parsed.mention_spans],
    }
