"""Source-side entity alignment from two channels.

The gold data gives only the target-language mention of each entity.  The
source-side mention is recovered two ways and merged:

* ``llm``: candidate (source, target) mention pairs proposed by an external
  model, kept only when the source mention literally occurs in the source
  sentence (hallucination filter) and the target mention occurs in at least
  one reference translation;
* ``projected``: following word-alignment links backwards from the gold
  target mention to a contiguous source token span.

Spans are byte offsets into the UTF-8 encoding of the source sentence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Optional

from .dataset import DatasetEntry
from .text import byte_slice, char_span_to_bytes, token_spans

__all__ = [
    "LLM",
    "PROJECTED",
    "CandidatePair",
    "TokenAlignment",
    "AlignedEntity",
    "filter_llm_candidates",
    "merge_alignments",
    "project_alignment",
    "read_candidates",
    "read_token_alignments",
]

LLM = "llm"
PROJECTED = "projected"

# Trimmed from the edges of projected mentions; word-aligned token spans often
# drag along sentence punctuation that is not part of the entity name.
_EDGE_TRIM = ".,;:!?\"'()" + " \t\r\n"


@dataclass(frozen=True)
class CandidatePair:
    """An unvalidated mention pair proposed for one entry."""

    entry_id: str
    source_mention: str
    target_mention: str


@dataclass(frozen=True)
class TokenAlignment:
    """Word-alignment links for one (entry, target reference) pair.

    ``pairs`` holds (source token index, target token index) links over the
    whitespace tokenizations of the two sentences.
    """

    entry_id: str
    target_index: int
    pairs: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class AlignedEntity:
    """A source mention located in the source sentence, with its translation."""

    source_mention: str
    source_span: tuple[int, int]  # byte span into the source sentence
    target_mention: str
    channel: str  # LLM or PROJECTED


def filter_llm_candidates(
    entry: DatasetEntry, candidates: Iterable[CandidatePair]
) -> list[AlignedEntity]:
    """Keep candidates whose source mention literally occurs in the source.

    A candidate survives only if its source mention is a byte-exact contiguous
    substring of the source sentence and its target mention occurs in at least
    one reference translation.  The span is the first occurrence.  Output is
    ordered by span start.
    """
    kept = []
    for cand in candidates:
        if cand.entry_id != entry.id:
            raise ValueError(
                f"candidate for entry {cand.entry_id!r} passed to entry {entry.id!r}"
            )
        if not cand.source_mention or not cand.target_mention:
            continue
        if cand.source_mention not in entry.source:
            continue
        if not any(cand.target_mention in t.translation for t in entry.targets):
            continue
        start = entry.source.index(cand.source_mention)
        span = char_span_to_bytes(entry.source, start, start + len(cand.source_mention))
        kept.append(AlignedEntity(cand.source_mention, span, cand.target_mention, LLM))
    kept.sort(key=lambda e: e.source_span)
    return kept


def _mention_token_indices(translation: str, mention: str) -> list[int]:
    """Indices of whitespace tokens overlapping the mention's first occurrence."""
    pos = translation.find(mention)
    if pos < 0:
        return []
    end = pos + len(mention)
    return [
        i
        for i, (s, e) in enumerate(token_spans(translation))
        if s < end and pos < e
    ]


def project_alignment(
    entry: DatasetEntry, target_index: int, alignment: TokenAlignment
) -> Optional[AlignedEntity]:
    """Project the gold target mention back to a source span via token links.

    Collects every source token linked to a token of the mention.  The result
    is the contiguous token range [min, max] over those tokens, accepted only
    if every intervening source token is itself in the collected set or linked
    to nothing at all.  Edge punctuation of the covered text is trimmed.
    Returns None when no mention token is linked or the range is broken.
    """
    translation = entry.targets[target_index].translation
    mention = entry.targets[target_index].mention
    src_spans = token_spans(entry.source)
    tgt_count = len(translation.split())
    for i, j in alignment.pairs:
        if not (0 <= i < len(src_spans) and 0 <= j < tgt_count):
            raise ValueError(
                f"alignment pair {i}-{j} out of range for entry {entry.id!r}"
            )
    mention_tokens = set(_mention_token_indices(translation, mention))
    collected = {i for i, j in alignment.pairs if j in mention_tokens}
    if not collected:
        return None
    lo, hi = min(collected), max(collected)
    linked_anywhere = {i for i, _ in alignment.pairs}
    for k in range(lo, hi + 1):
        if k not in collected and k in linked_anywhere:
            return None
    covered_start, covered_end = src_spans[lo][0], src_spans[hi][1]
    covered = entry.source[covered_start:covered_end]
    trimmed = covered.strip(_EDGE_TRIM)
    if not trimmed:
        return None
    start = covered_start + covered.index(trimmed)
    span = char_span_to_bytes(entry.source, start, start + len(trimmed))
    return AlignedEntity(trimmed, span, mention, PROJECTED)


def _overlaps(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def merge_alignments(
    llm: Iterable[AlignedEntity], projected: Iterable[AlignedEntity]
) -> list[AlignedEntity]:
    """Union of both channels for one (entry, target reference).

    Deduplicated by (source span, target mention); when a projected span
    overlaps an llm span for the same target mention without being identical,
    the llm entry wins.  Result is in source appearance order.
    """
    merged: list[AlignedEntity] = []
    keys: set[tuple[tuple[int, int], str]] = set()
    llm_kept: list[AlignedEntity] = []
    for ent in llm:
        key = (ent.source_span, ent.target_mention)
        if key in keys:
            continue
        keys.add(key)
        llm_kept.append(ent)
        merged.append(ent)
    for ent in projected:
        key = (ent.source_span, ent.target_mention)
        if key in keys:
            continue
        if any(
            l.target_mention == ent.target_mention and _overlaps(l.source_span, ent.source_span)
            for l in llm_kept
        ):
            continue
        keys.add(key)
        merged.append(ent)
    merged.sort(key=lambda e: (e.source_span, e.target_mention, e.channel))
    return merged


def align_entry(
    entry: DatasetEntry,
    candidates: Iterable[CandidatePair],
    alignments: dict[tuple[str, int], TokenAlignment],
) -> list[tuple[int, list[AlignedEntity]]]:
    """Run filter, projection, and merge for every target reference of an entry.

    LLM entities are attached only to references whose translation actually
    contains their target mention.  References with no aligned entities are
    still emitted, with an empty list.
    """
    llm_all = filter_llm_candidates(entry, candidates)
    out = []
    for ti, target in enumerate(entry.targets):
        llm = [e for e in llm_all if e.target_mention in target.translation]
        projected = []
        record = alignments.get((entry.id, ti))
        if record is not None:
            entity = project_alignment(entry, ti, record)
            if entity is not None:
                projected.append(entity)
        out.append((ti, merge_alignments(llm, projected)))
    return out


def verify_span(entity: AlignedEntity, source: str) -> bool:
    """True iff the stored span really covers the stored mention text."""
    return byte_slice(source, entity.source_span) == entity.source_mention


def read_candidates(stream: IO) -> dict[str, list[CandidatePair]]:
    """Read a candidate JSONL file, grouped by entry id in file order."""
    import json

    grouped: dict[str, list[CandidatePair]] = {}
    for lineno, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            pair = CandidatePair(
                entry_id=str(raw["entry_id"]),
                source_mention=str(raw["source_mention"]),
                target_mention=str(raw["target_mention"]),
            )
        except (KeyError, ValueError) as exc:
            raise ValueError(f"candidates line {lineno}: {exc}") from None
        grouped.setdefault(pair.entry_id, []).append(pair)
    return grouped


def read_token_alignments(stream: IO) -> dict[tuple[str, int], TokenAlignment]:
    """Read tab-separated alignment records: entry id, target index, Pharaoh pairs.

    The pairs field is space-separated "i-j" links and may be empty.
    """
    records: dict[tuple[str, int], TokenAlignment] = {}
    for lineno, line in enumerate(stream, start=1):
        if isinstance(line, bytes):
            line = line.decode("utf-8")
        if not line.strip():
            continue
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 3:
            raise ValueError(
                f"alignments line {lineno}: expected 3 tab-separated fields, got {len(parts)}"
            )
        entry_id, index_text, pairs_text = parts
        try:
            target_index = int(index_text)
            pairs = frozenset(
                (int(i), int(j))
                for i, j in (p.split("-", 1) for p in pairs_text.split())
            )
        except ValueError:
            raise ValueError(f"alignments line {lineno}: malformed record") from None
        records[(entry_id, target_index)] = TokenAlignment(entry_id, target_index, pairs)
    return records
