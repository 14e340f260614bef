"""
====================================================
Building a multitask example and parsing it back
====================================================

The training target packs three payloads into one string:

    mentions <SEP> translated mentions <SEP> tagged translation

This script assembles that string for one sentence, then feeds model-like
outputs (clean and corrupted) through the lenient parser and inspects the
structure verdicts.
"""
from eamt.alignment import AlignedEntity, LLM
from eamt.builder import build_example
from eamt.dataset import parse_dataset
from eamt.parsing import parse_generation, strip_entity_tags

record = (
    '{"id": "Q362_0", "wikidata_id": "Q362", "entity_types": ["Military conflict"], '
    '"source": "Who was the overall Commander of Allied Forces in Europe?", '
    '"targets": [{"translation": '
    '"Wer war der Oberbefehlshaber der alliierten Streitkräfte in Europa?", '
    '"mention": "alliierten Streitkräfte"}], '
    '"source_locale": "en", "target_locale": "de"}'
)
entry = parse_dataset(record).entries[0]
entities = [
    AlignedEntity("Europe", (50, 56), "Europa", LLM),
    AlignedEntity("Allied Forces", (33, 46), "alliierten Streitkräfte", LLM),
]

example = build_example(entry, 0, entities)
print("input: ", example.input_text)
print("target:", example.target_text)

# The tagger picks the longest mention first and wraps the leftmost free
# occurrence, so "alliierten Streitkräfte" is claimed before "Europa".
parts = example.target_text.split(" <SEP> ")
print("mentions part:   ", parts[0])
print("translations:    ", parts[1])
print("tagged sentence: ", parts[2])

# A faithful generation parses losslessly: structure is well_formed, the
# mention pairs come back, and stripping the tags restores the reference.
parsed = parse_generation(example.target_text)
print("structure:", parsed.structure.value)
print("pairs:    ", parsed.predicted_entities)
print("clean == reference:", parsed.clean_translation == entry.targets[0].translation)

# Mention spans are byte offsets into the clean translation.
clean_bytes = parsed.clean_translation.encode("utf-8")
for lo, hi in parsed.mention_spans:
    print(f"  span ({lo}, {hi}) -> {clean_bytes[lo:hi].decode('utf-8')!r}")

# Real model output degrades in predictable ways.  The parser never gives
# up; it labels the damage instead.
for broken in [
    "Wer war der Oberbefehlshaber?",                      # dropped both separators
    "Europa <SEP> Wer war der Oberbefehlshaber?",         # only one separator
    "a | b <SEP> x <SEP> t",                              # 2 mentions vs 1 translation
    "a <SEP> b <SEP> <entity> t",                         # unclosed tag
]:
    verdict = parse_generation(broken)
    print(f"{verdict.structure.value:18} clean={verdict.clean_translation!r}")

# Tag stripping alone is also exposed, and it scrubs stray fragments so
# no markup ever leaks into the clean text.
clean, spans = strip_entity_tags("der <entity> alliierten Streitkräfte </entity> in")
print("stripped:", clean, spans)
