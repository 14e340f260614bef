"""
==========================================
Loading, validating and writing a dataset
==========================================

A walk through the JSONL dataset layer: parse records in lenient and
strict mode, look at what gets rejected and why, then serialize back
to canonical bytes and confirm the round trip is exact.
"""
import json

from eamt.dataset import MentionNotInTranslation, parse_dataset, write_dataset

# A small corpus, one JSON object per line.  The second record is missing
# its source text and the third claims a mention that never occurs in the
# translation, so only the first should survive validation.
raw = "\n".join([
    json.dumps({
        "id": "Q362_0",
        "wikidata_id": "Q362",
        "entity_types": ["Military conflict"],
        "source": "Who was the overall Commander of Allied Forces in Europe?",
        "targets": [{
            "translation": "Wer war der Oberbefehlshaber der alliierten Streitkräfte in Europa?",
            "mention": "alliierten Streitkräfte",
        }],
        "source_locale": "en",
        "target_locale": "de",
    }, ensure_ascii=False),
    json.dumps({"id": "BROKEN_0", "targets": []}),
    json.dumps({
        "id": "Q183_0",
        "wikidata_id": "Q183",
        "entity_types": ["Country"],
        "source": "Where is the capital of Germany?",
        "targets": [{"translation": "Wo ist die Hauptstadt?", "mention": "Deutschland"}],
        "source_locale": "en",
        "target_locale": "de",
    }, ensure_ascii=False),
])

# Lenient mode keeps going: good records accumulate in .entries, bad ones
# in .rejects together with the reason.
result = parse_dataset(raw)
print(f"accepted {len(result.entries)}, rejected {len(result.rejects)}")
for reject in result.rejects:
    print(f"  line {reject.record} ({reject.entry_id}): {reject.error}")

# Strict mode raises on the first invalid record instead.
try:
    parse_dataset(raw, strict=True)
except Exception as exc:
    print(f"strict mode stopped with {type(exc).__name__}: {exc}")

# The mention check is byte-literal: "Deutschland" must appear verbatim
# inside the translation string, case and diacritics included.
only_bad_mention = raw.splitlines()[2]
try:
    parse_dataset(only_bad_mention, strict=True)
except MentionNotInTranslation as exc:
    print(f"mention check: entry {exc.entry_id}, target {exc.index}")

# Serialization is canonical (fixed key order, raw UTF-8, one object per
# line), so write -> parse -> write is a fixed point.
first_pass = write_dataset(result.entries)
second_pass = write_dataset(parse_dataset(first_pass).entries)
print("canonical round trip exact:", first_pass == second_pass)
print("umlauts stay raw bytes:", "Streitkräfte" in first_pass.decode("utf-8"))
