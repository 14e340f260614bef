"""
=====================================
Two channels of entity alignment
=====================================

Entity mentions in a translation come from two independent sources: a
candidate list that must survive literal-substring filtering, and a
word-level token alignment projected through the known target mention.
This script runs both channels on one sentence and merges them.
"""
from eamt.alignment import (
    CandidatePair,
    TokenAlignment,
    filter_llm_candidates,
    merge_alignments,
    project_alignment,
)
from eamt.dataset import parse_dataset

record = (
    '{"id": "Q362_0", "wikidata_id": "Q362", "entity_types": ["Military conflict"], '
    '"source": "Who was the overall Commander of Allied Forces in Europe?", '
    '"targets": [{"translation": '
    '"Wer war der Oberbefehlshaber der alliierten Streitkräfte in Europa?", '
    '"mention": "alliierten Streitkräfte"}], '
    '"source_locale": "en", "target_locale": "de"}'
)
entry = parse_dataset(record).entries[0]

# --- Channel 1: candidate filtering -----------------------------------
# Candidates are kept only when the source mention is a byte-exact
# substring of the source sentence and the target mention occurs in at
# least one reference translation.  Everything else is treated as a
# hallucination and dropped.
candidates = [
    CandidatePair(entry.id, "Europe", "Europa"),            # exact: kept
    CandidatePair(entry.id, "europe", "Europa"),            # case miss: dropped
    CandidatePair(entry.id, "Eastern Europe", "Europa"),    # not in source: dropped
    CandidatePair(entry.id, "Allied Forces", "alliierte"),  # "alliierte" occurs: kept
]
survivors = filter_llm_candidates(entry, candidates)
print("filter kept:")
for ent in survivors:
    print(f"  {ent.source_mention!r} {ent.source_span} -> {ent.target_mention!r}")

# --- Channel 2: alignment projection ----------------------------------
# A Pharaoh-style alignment links source token i to target token j.  We
# locate the known target mention ("alliierten Streitkräfte", tokens 5-6)
# and project the links back onto source tokens 6-7 ("Allied Forces").
alignment = TokenAlignment(
    entry_id=entry.id,
    target_index=0,
    pairs=frozenset({(0, 0), (1, 1), (4, 3), (6, 5), (7, 6), (8, 7), (9, 8)}),
)
projected = project_alignment(entry, 0, alignment)
print("projection found:", projected)

# Note the span is in bytes: "Europe" sits at 50..56 of the UTF-8 source.
source_bytes = entry.source.encode("utf-8")
if projected is not None:
    lo, hi = projected.source_span
    print("span recovers text:", source_bytes[lo:hi].decode("utf-8"))

# --- Merge -------------------------------------------------------------
# The merge drops exact duplicates (candidate channel wins), keeps
# genuinely different readings of the same span, and orders the result
# by source position.
merged = merge_alignments(survivors, [projected] if projected else [])
print("merged, in source order:")
for ent in merged:
    print(f"  {ent.source_span} {ent.source_mention!r} -> {ent.target_mention!r} [{ent.channel}]")
