"""
====================================
BLEU mechanics and run-level scoring
====================================

Three tiny corpora that each isolate one part of corpus BLEU — perfect
overlap, clipped counts, and the brevity penalty — followed by the
combined scorer that consumes raw generations.
"""
import io
import math

from eamt.dataset import parse_dataset
from eamt.metrics import corpus_bleu, score_run, tokenize_for_bleu
from eamt.parsing import read_generations

# Tokenization pads common punctuation with spaces and then splits, so
# "Europa?" becomes two tokens while "o'" and hyphens stay intact.
print(tokenize_for_bleu("Wer war in Europa?"))
print(tokenize_for_bleu("Ring a Ring o' Roses (folk-song)"))

# --- Perfect overlap ---------------------------------------------------
hyp = [tokenize_for_bleu("the cat sat on the mat")]
refs = [[tokenize_for_bleu("the cat sat on the mat")]]
perfect = corpus_bleu(hyp, refs)
print("identity score:", perfect.score, "precisions:", perfect.precisions)

# --- Clipping ----------------------------------------------------------
# Four copies of "the" against a reference holding a single "the": the
# matched count is clipped at 1, so unigram precision is 1/4, and the
# empty bigram overlap zeroes the geometric mean outright.
clipped = corpus_bleu([["the", "the", "the", "the"]], [[["the", "cat"]]], max_n=2)
print("clipped:", clipped.score, clipped.precisions)

# --- Brevity penalty ---------------------------------------------------
# A 3-token hypothesis against a 6-token reference has perfect n-gram
# precision but half the length, so the score is exactly exp(1 - 6/3).
brief = corpus_bleu(
    [["the", "cat", "sat"]],
    [[["the", "cat", "sat", "on", "the", "mat"]]],
    max_n=2,
)
print("brevity penalty:", brief.brevity_penalty, "== exp(-1):",
      math.isclose(brief.score, math.exp(-1.0)))

# --- Scoring a run -----------------------------------------------------
# score_run ties it together: generations are parsed leniently, clean
# translations go into BLEU against every reference, and the mention
# pairs feed the entity match rate.  Malformed outputs still score.
dataset = parse_dataset(
    '{"id": "Q183_0", "wikidata_id": "Q183", "entity_types": ["Country"], '
    '"source": "Where is the capital of Germany?", '
    '"targets": [{"translation": "Wo ist die Hauptstadt von Deutschland?", '
    '"mention": "Deutschland"}], '
    '"source_locale": "en", "target_locale": "de"}'
).entries

generations = read_generations(io.StringIO(
    '{"entry_id": "Q183_0", "generation": '
    '"Germany <SEP> Deutschland <SEP> Wo ist die Hauptstadt von '
    '<entity> Deutschland </entity>?"}'
))
report = score_run(generations, dataset)
print("BLEU:", report.bleu.score,
      "entity match:", report.entity_match_rate,
      "malformed:", report.n_malformed)
