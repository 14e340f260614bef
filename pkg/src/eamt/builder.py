"""Construction of multitask fine-tuning pairs.

Each training pair couples a prefixed source sentence with a three-part
target: the source-side entity mentions, their target-language translations,
and the full reference translation with every mention wrapped in boundary
tags.  Parts are separated by the literal "<SEP>" and mentions within a part
by "|", both padded with single spaces:

    input:  ner and translation: <source>
    target: <m1> | <m2> <SEP> <t1> | <t2> <SEP> ... <entity> t1 </entity> ...

All components are whitespace-normalized (runs collapsed, ends trimmed) so
every built example is a single line.  With zero entities the first two parts
are empty strings and both separators remain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .alignment import AlignedEntity
from .dataset import DatasetEntry
from .text import collapse_spaces

__all__ = [
    "TASK_PREFIX",
    "SEP",
    "ENTITY_OPEN",
    "ENTITY_CLOSE",
    "MentionMissing",
    "MultitaskExample",
    "build_example",
    "tag_translation",
]

TASK_PREFIX = "ner and translation: "
SEP = "<SEP>"
ENTITY_OPEN = "<entity>"
ENTITY_CLOSE = "</entity>"

_RESERVED = (SEP, ENTITY_OPEN, ENTITY_CLOSE)


class MentionMissing(ValueError):
    """A target mention has no taggable occurrence in the translation."""

    def __init__(self, mention: str, entry_id: str | None = None):
        where = f" (entry {entry_id!r})" if entry_id else ""
        super().__init__(f"mention {mention!r} not found untagged in translation{where}")
        self.mention = mention
        self.entry_id = entry_id


@dataclass(frozen=True)
class MultitaskExample:
    """One fine-tuning pair, with the entity order actually used."""

    entry_id: str
    target_index: int
    input_text: str
    target_text: str
    entities: tuple[AlignedEntity, ...]


def _claim_spans(
    translation: str, mentions: Sequence[str]
) -> list[tuple[int, int, str]]:
    """Choose one non-overlapping occurrence per mention.

    Mentions are processed longest first (ties keep input order) so a short
    mention cannot shadow the inside of a longer one; each takes its leftmost
    occurrence that does not intersect an already-claimed span.
    """
    order = sorted(range(len(mentions)), key=lambda i: -len(mentions[i]))
    claimed: list[tuple[int, int]] = []
    out: list[tuple[int, int, str]] = []
    for i in order:
        mention = mentions[i]
        pos = 0
        start = None
        while True:
            hit = translation.find(mention, pos)
            if hit < 0:
                break
            span = (hit, hit + len(mention))
            if not any(s < span[1] and span[0] < e for s, e in claimed):
                start = hit
                break
            pos = hit + 1
        if start is None:
            raise MentionMissing(mention)
        claimed.append((start, start + len(mention)))
        out.append((start, start + len(mention), mention))
    out.sort()
    return out


def tag_translation(translation: str, entities: Iterable[AlignedEntity]) -> str:
    """Wrap the first free occurrence of each mention in boundary tags.

    The translation and mentions are whitespace-normalized first.  Tags never
    nest or overlap; raises MentionMissing when a mention has no occurrence
    outside already-tagged text.
    """
    text = collapse_spaces(translation)
    mentions = [collapse_spaces(e.target_mention) for e in entities]
    pieces = []
    cursor = 0
    for start, end, mention in _claim_spans(text, mentions):
        pieces.append(text[cursor:start])
        pieces.append(f"{ENTITY_OPEN} {mention} {ENTITY_CLOSE}")
        cursor = end
    pieces.append(text[cursor:])
    return "".join(pieces)


def build_example(
    entry: DatasetEntry,
    target_index: int,
    entities: Sequence[AlignedEntity],
) -> MultitaskExample:
    """Build one fine-tuning pair for the chosen reference translation.

    The caller-supplied entity order is preserved in the first two parts;
    the alignment stage supplies source-appearance order by default.
    """
    translation = collapse_spaces(entry.targets[target_index].translation)
    source = collapse_spaces(entry.source)
    source_mentions = [collapse_spaces(e.source_mention) for e in entities]
    target_mentions = [collapse_spaces(e.target_mention) for e in entities]
    for piece in [source, translation, *source_mentions, *target_mentions]:
        for token in _RESERVED:
            if token in piece:
                raise ValueError(
                    f"entry {entry.id!r}: text contains reserved token {token!r}"
                )
    for mention in target_mentions:
        if mention not in translation:
            raise MentionMissing(mention, entry.id)
    try:
        tagged = tag_translation(translation, entities)
    except MentionMissing as exc:
        raise MentionMissing(exc.mention, entry.id) from None
    target_text = (
        " | ".join(source_mentions)
        + f" {SEP} "
        + " | ".join(target_mentions)
        + f" {SEP} "
        + tagged
    )
    return MultitaskExample(
        entry_id=entry.id,
        target_index=target_index,
        input_text=TASK_PREFIX + source,
        target_text=target_text,
        entities=tuple(entities),
    )
