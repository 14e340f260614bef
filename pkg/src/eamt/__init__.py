"""Corpus pipeline and evaluation harness for entity-aware machine translation."""

from .alignment import (
    AlignedEntity,
    CandidatePair,
    TokenAlignment,
    align_entry,
    filter_llm_candidates,
    merge_alignments,
    project_alignment,
)
from .builder import MultitaskExample, build_example, tag_translation
from .dataset import (
    DatasetEntry,
    ParseResult,
    TargetReference,
    parse_dataset,
    write_dataset,
)
from .metrics import (
    BleuScore,
    ScoreReport,
    corpus_bleu,
    entity_match_rate,
    score_run,
    tokenize_for_bleu,
)
from .parsing import ParsedGeneration, Structure, parse_generation, strip_entity_tags
from .splitting import SplitSpec, split_dataset, split_sizes

__version__ = "0.1.0"

__all__ = [
    "AlignedEntity",
    "BleuScore",
    "CandidatePair",
    "DatasetEntry",
    "MultitaskExample",
    "ParseResult",
    "ParsedGeneration",
    "ScoreReport",
    "SplitSpec",
    "Structure",
    "TargetReference",
    "TokenAlignment",
    "align_entry",
    "build_example",
    "corpus_bleu",
    "entity_match_rate",
    "filter_llm_candidates",
    "merge_alignments",
    "parse_dataset",
    "parse_generation",
    "project_alignment",
    "score_run",
    "split_dataset",
    "split_sizes",
    "strip_entity_tags",
    "tag_translation",
    "tokenize_for_bleu",
    "write_dataset",
]
