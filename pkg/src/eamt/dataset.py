"""Loading, validation, and serialization of the entity-translation dataset format.

Dataset files carry one record per entity-bearing source sentence: the source
text, a Wikidata id, entity types, and one or more reference translations,
each paired with the target-language surface form ("mention") of the entity.
Input may be JSONL (one object per line) or a single JSON array; output is
always JSONL.

Validation is byte-exact on purpose: mentions are checked against their
translation without case folding or Unicode normalization, because references
may legitimately differ only in casing (e.g. "Girotondo" vs "girotondo").
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable, Union

__all__ = [
    "TargetReference",
    "DatasetEntry",
    "RejectedRecord",
    "ParseResult",
    "DatasetError",
    "MalformedRecord",
    "DuplicateId",
    "MentionNotInTranslation",
    "parse_dataset",
    "write_dataset",
    "load_dataset",
    "save_dataset",
]


class DatasetError(ValueError):
    """Base class for dataset validation failures."""


class MalformedRecord(DatasetError):
    def __init__(self, record: int, reason: str):
        super().__init__(f"record {record}: {reason}")
        self.record = record
        self.reason = reason


class DuplicateId(DatasetError):
    def __init__(self, record: int, entry_id: str):
        super().__init__(f"record {record}: duplicate id {entry_id!r}")
        self.record = record
        self.entry_id = entry_id


class MentionNotInTranslation(DatasetError):
    def __init__(self, record: int, entry_id: str, index: int):
        super().__init__(
            f"record {record}: entry {entry_id!r} targets[{index}]:"
            " mention does not occur in translation"
        )
        self.record = record
        self.entry_id = entry_id
        self.index = index


@dataclass(frozen=True)
class TargetReference:
    """One reference translation plus the entity's target-language mention."""

    translation: str
    mention: str


@dataclass(frozen=True)
class DatasetEntry:
    """One dataset record: a source sentence with its reference translations."""

    id: str
    wikidata_id: str
    entity_types: tuple[str, ...]
    source: str
    targets: tuple[TargetReference, ...]
    source_locale: str
    target_locale: str


@dataclass(frozen=True)
class RejectedRecord:
    """A record dropped during lenient parsing, with the validation error."""

    record: int  # 1-based line number (JSONL) or array index (JSON array)
    entry_id: str | None
    error: DatasetError


@dataclass
class ParseResult:
    entries: list[DatasetEntry] = field(default_factory=list)
    rejects: list[RejectedRecord] = field(default_factory=list)

    @property
    def accepted(self) -> int:
        return len(self.entries)

    @property
    def rejected(self) -> int:
        return len(self.rejects)


_REQUIRED_STR = ("id", "wikidata_id", "source", "source_locale", "target_locale")


def _validate_record(record: int, raw: object, seen_ids: set[str]) -> DatasetEntry:
    if not isinstance(raw, dict):
        raise MalformedRecord(record, f"expected a JSON object, got {type(raw).__name__}")
    for key in _REQUIRED_STR:
        if key not in raw:
            raise MalformedRecord(record, f"missing field {key!r}")
        if not isinstance(raw[key], str):
            raise MalformedRecord(record, f"field {key!r} must be a string")
    entry_id = raw["id"]
    if not entry_id:
        raise MalformedRecord(record, "field 'id' is empty")
    if not raw["source"].strip():
        raise MalformedRecord(record, "field 'source' is empty")
    if not raw["source_locale"] or not raw["target_locale"]:
        raise MalformedRecord(record, "locale fields must be nonempty")
    types = raw.get("entity_types")
    if not isinstance(types, list) or not all(isinstance(t, str) for t in types):
        raise MalformedRecord(record, "field 'entity_types' must be a list of strings")
    targets_raw = raw.get("targets")
    if not isinstance(targets_raw, list) or not targets_raw:
        raise MalformedRecord(record, "field 'targets' must be a nonempty list")
    targets = []
    for i, t in enumerate(targets_raw):
        if not isinstance(t, dict):
            raise MalformedRecord(record, f"targets[{i}] must be an object")
        for key in ("translation", "mention"):
            if key not in t or not isinstance(t[key], str):
                raise MalformedRecord(record, f"targets[{i}] missing string field {key!r}")
        if not t["mention"]:
            raise MalformedRecord(record, f"targets[{i}] has an empty mention")
        if t["mention"] not in t["translation"]:
            raise MentionNotInTranslation(record, entry_id, i)
        targets.append(TargetReference(translation=t["translation"], mention=t["mention"]))
    if entry_id in seen_ids:
        raise DuplicateId(record, entry_id)
    return DatasetEntry(
        id=entry_id,
        wikidata_id=raw["wikidata_id"],
        entity_types=tuple(types),
        source=raw["source"],
        targets=tuple(targets),
        source_locale=raw["source_locale"],
        target_locale=raw["target_locale"],
    )


def _decode(data: Union[bytes, str, IO]) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    if isinstance(data, str):
        return data
    text = data.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return text


def _raw_records(text: str) -> Iterable[tuple[int, object, DatasetError | None]]:
    """Yield (record number, payload, decode error) in file order.

    A leading ``[`` selects JSON-array mode; anything else is treated as JSONL.
    """
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            # An unparseable array document has no recoverable records, so
            # this raises even in lenient mode.
            raise MalformedRecord(exc.lineno, f"invalid JSON document: {exc.msg}")
        if not isinstance(payload, list):  # pragma: no cover - startswith guard
            raise MalformedRecord(0, "top-level JSON value must be an array")
        for i, item in enumerate(payload, start=1):
            yield i, item, None
        return
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            yield lineno, json.loads(line), None
        except json.JSONDecodeError as exc:
            yield lineno, None, MalformedRecord(lineno, f"invalid JSON: {exc.msg}")


def parse_dataset(data: Union[bytes, str, IO], strict: bool = False) -> ParseResult:
    """Parse a dataset stream, validating every record.

    In strict mode the first invalid record raises; in lenient mode invalid
    records are skipped and reported in ``rejects``, so accepted + rejected
    always equals the number of input records.
    """
    result = ParseResult()
    seen: set[str] = set()
    for record, raw, err in _raw_records(_decode(data)):
        if err is None:
            try:
                entry = _validate_record(record, raw, seen)
            except DatasetError as exc:
                err = exc
        if err is not None:
            if strict:
                raise err
            entry_id = raw.get("id") if isinstance(raw, dict) else None
            result.rejects.append(RejectedRecord(record, entry_id, err))
            continue
        seen.add(entry.id)
        result.entries.append(entry)
    return result


def entry_to_dict(entry: DatasetEntry) -> dict:
    """Serialize one entry with the canonical key order."""
    return {
        "id": entry.id,
        "wikidata_id": entry.wikidata_id,
        "entity_types": list(entry.entity_types),
        "source": entry.source,
        "targets": [
            {"translation": t.translation, "mention": t.mention} for t in entry.targets
        ],
        "source_locale": entry.source_locale,
        "target_locale": entry.target_locale,
    }


def write_dataset(entries: Iterable[DatasetEntry]) -> bytes:
    """Serialize entries as UTF-8 JSONL. Round-trips exactly through parse_dataset."""
    lines = [json.dumps(entry_to_dict(e), ensure_ascii=False) for e in entries]
    return "".join(line + "\n" for line in lines).encode("utf-8")


def load_dataset(path, strict: bool = False) -> ParseResult:
    with open(path, "rb") as fh:
        return parse_dataset(fh, strict=strict)


def save_dataset(path, entries: Iterable[DatasetEntry]) -> None:
    with open(path, "wb") as fh:
        fh.write(write_dataset(entries))
