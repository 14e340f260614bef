"""Corpus scoring: multi-reference BLEU and an entity-match rate.

BLEU follows the classical definition: corpus-level clipped n-gram counts,
uniform weights, unsmoothed geometric mean, and a brevity penalty against the
per-sentence closest reference length (ties broken toward the shorter
reference).  Scores are kept in [0, 1]; display scaling is the caller's job.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .dataset import DatasetEntry
from .parsing import GenerationRecord, ParsedGeneration, Structure, parse_generation

__all__ = [
    "BleuScore",
    "ScoreReport",
    "LengthMismatch",
    "EmptyCorpus",
    "UnknownId",
    "corpus_bleu",
    "tokenize_for_bleu",
    "entity_match_rate",
    "score_run",
    "report_to_dict",
]

SMOOTH_EPSILON = 1e-9

# Characters surrounded by spaces before whitespace tokenization.
_SPLIT_PUNCT = '.,!?;:"()[]'
_PUNCT_TABLE = str.maketrans({c: f" {c} " for c in _SPLIT_PUNCT})


class LengthMismatch(ValueError):
    pass


class EmptyCorpus(ValueError):
    pass


class UnknownId(ValueError):
    def __init__(self, entry_id: str):
        super().__init__(f"generation references unknown entry id {entry_id!r}")
        self.entry_id = entry_id


@dataclass(frozen=True)
class BleuScore:
    """Corpus BLEU with its components; score and precisions are in [0, 1]."""

    score: float
    precisions: tuple[float, ...]
    brevity_penalty: float
    hyp_length: int
    ref_length: int
    max_n: int


@dataclass(frozen=True)
class ScoreReport:
    bleu: BleuScore
    entity_match_rate: float
    n_items: int
    n_malformed: int
    missing_ids: tuple[str, ...] = ()


def tokenize_for_bleu(text: str, lowercase: bool = False) -> list[str]:
    """Deterministic tokenization: split punctuation, then split on whitespace."""
    if lowercase:
        text = text.lower()
    return text.translate(_PUNCT_TABLE).split()


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _closest_ref_length(refs: Sequence[Sequence[str]], hyp_len: int) -> int:
    return min((len(r) for r in refs), key=lambda rl: (abs(rl - hyp_len), rl))


def corpus_bleu(
    hypotheses: Sequence[Sequence[str]],
    references: Sequence[Sequence[Sequence[str]]],
    max_n: int = 4,
    smoothing: bool = False,
) -> BleuScore:
    """Corpus-level BLEU over tokenized hypotheses and their reference sets.

    With smoothing enabled, zero clipped-match counts are replaced by a tiny
    epsilon so short corpora stay scoreable; an order with no hypothesis
    n-grams at all still yields precision 0.  An all-empty hypothesis corpus
    scores 0 with the brevity penalty pinned to 1 by convention.
    """
    if len(hypotheses) != len(references):
        raise LengthMismatch(
            f"{len(hypotheses)} hypotheses vs {len(references)} reference sets"
        )
    if not hypotheses:
        raise EmptyCorpus("no hypotheses to score")
    matches = [0] * max_n
    totals = [0] * max_n
    hyp_len = 0
    ref_len = 0
    for hyp, refs in zip(hypotheses, references):
        if not refs:
            raise ValueError("empty reference set")
        hyp_len += len(hyp)
        ref_len += _closest_ref_length(refs, len(hyp))
        for n in range(1, max_n + 1):
            counts = _ngram_counts(hyp, n)
            if not counts:
                continue
            limits: Counter = Counter()
            for ref in refs:
                limits |= _ngram_counts(ref, n)
            matches[n - 1] += sum((counts & limits).values())
            totals[n - 1] += sum(counts.values())

    precisions = tuple(
        (m / t) if t > 0 else 0.0 for m, t in zip(matches, totals)
    )
    if hyp_len == 0:
        return BleuScore(0.0, precisions, 1.0, 0, ref_len, max_n)
    bp = 1.0 if hyp_len > ref_len else math.exp(1.0 - ref_len / hyp_len)
    effective = [
        (max(m, SMOOTH_EPSILON) / t) if (smoothing and t > 0) else p
        for m, t, p in zip(matches, totals, precisions)
    ]
    if any(p == 0.0 for p in effective):
        score = 0.0
    else:
        score = bp * math.exp(math.fsum(math.log(p) for p in effective) / max_n)
    return BleuScore(score, precisions, bp, hyp_len, ref_len, max_n)


def entity_match_rate(
    parsed: Sequence[ParsedGeneration], gold: Sequence[Sequence[str]]
) -> float:
    """Fraction of items whose clean translation contains any gold mention.

    The check is byte-exact substring containment; an item with no gold
    mentions counts as a miss.
    """
    if len(parsed) != len(gold):
        raise LengthMismatch(f"{len(parsed)} parsed items vs {len(gold)} gold sets")
    if not parsed:
        raise EmptyCorpus("no items")
    hits = sum(
        1
        for p, mentions in zip(parsed, gold)
        if any(m and m in p.clean_translation for m in mentions)
    )
    return hits / len(parsed)


def score_run(
    generations: Sequence[GenerationRecord],
    entries: Sequence[DatasetEntry],
    max_n: int = 4,
    smoothing: bool = False,
) -> ScoreReport:
    """Join generations to their entries, parse, and score the corpus.

    Every generation is scored against all reference translations of its
    entry.  Entries without any generation are listed as missing and excluded
    from the corpus statistics.
    """
    if not generations:
        raise EmptyCorpus("generations file is empty")
    by_id = {e.id: e for e in entries}
    hyps: list[list[str]] = []
    refs: list[list[list[str]]] = []
    gold: list[list[str]] = []
    parsed_all: list[ParsedGeneration] = []
    covered: set[str] = set()
    for record in generations:
        entry = by_id.get(record.entry_id)
        if entry is None:
            raise UnknownId(record.entry_id)
        covered.add(entry.id)
        parsed = parse_generation(record.generation)
        parsed_all.append(parsed)
        hyps.append(tokenize_for_bleu(parsed.clean_translation))
        refs.append([tokenize_for_bleu(t.translation) for t in entry.targets])
        gold.append([t.mention for t in entry.targets])
    missing = tuple(sorted(set(by_id) - covered))
    bleu = corpus_bleu(hyps, refs, max_n=max_n, smoothing=smoothing)
    rate = entity_match_rate(parsed_all, gold)
    malformed = sum(1 for p in parsed_all if p.structure is not Structure.WELL_FORMED)
    return ScoreReport(
        bleu=bleu,
        entity_match_rate=rate,
        n_items=len(parsed_all),
        n_malformed=malformed,
        missing_ids=missing,
    )


def report_to_dict(report: ScoreReport) -> dict:
    return {
        "bleu": {
            "score": report.bleu.score,
            "precisions": list(report.bleu.precisions),
            "brevity_penalty": report.bleu.brevity_penalty,
            "hyp_length": report.bleu.hyp_length,
            "ref_length": report.bleu.ref_length,
            "max_n": report.bleu.max_n,
        },
        "entity_match_rate": report.entity_match_rate,
        "n_items": report.n_items,
        "n_malformed": report.n_malformed,
        "missing_ids": list(report.missing_ids),
    }
