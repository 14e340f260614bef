"""Toy-scale sequence-to-sequence harness for multitask translation examples.

Consumes the corpus pipeline's builder JSONL (input_text -> target_text
pairs), fine-tunes a small word-level encoder-decoder, and writes raw
generations in the JSONL format the pipeline's scorer expects.  Everything
runs on CPU in seconds; this is a format-compatibility proof, not a
replication of any full-scale system.
"""

from eamt_trainer.data import ExamplePair, Vocab, read_examples
from eamt_trainer.generation import generate
from eamt_trainer.model import MODEL_PRESETS, Seq2SeqModel
from eamt_trainer.training import TrainConfig, fine_tune

__all__ = [
    "ExamplePair",
    "MODEL_PRESETS",
    "Seq2SeqModel",
    "TrainConfig",
    "Vocab",
    "fine_tune",
    "generate",
    "read_examples",
]
