"""Greedy decoding into the scorer's generations JSONL format."""

import json
from pathlib import Path
from typing import Optional

import torch

from eamt_trainer.data import BOS, EOS, Vocab, read_examples
from eamt_trainer.model import Seq2SeqModel
from eamt_trainer.training import load_checkpoint

MAX_NEW_TOKENS = 256


def greedy_decode(model: Seq2SeqModel, vocab: Vocab, text: str,
                  max_new_tokens: int = MAX_NEW_TOKENS) -> str:
    """Decode one input string; deterministic, capped at max_new_tokens."""
    source = torch.tensor([vocab.encode(text)])
    produced = [BOS]
    with torch.no_grad():
        for _ in range(max_new_tokens):
            logits = model(source, torch.tensor([produced]))
            next_id = int(logits[0, -1].argmax())
            if next_id == EOS:
                break
            produced.append(next_id)
    return vocab.decode(produced)


def generate(checkpoint: str | Path, inputs_file: str | Path,
             out_file: Optional[str | Path] = None) -> list[dict]:
    """Run the checkpoint over every row of a builder-format inputs file.

    Returns one {entry_id, target_index, generation} record per input
    line, in input order, and writes them as JSONL when out_file is set.
    Raises FileNotFoundError when the checkpoint is missing.
    """
    model, vocab = load_checkpoint(checkpoint)
    rows = []
    for pair in read_examples(inputs_file, require_target=False):
        rows.append(
            {
                "entry_id": pair.entry_id,
                "target_index": pair.target_index,
                "generation": greedy_decode(model, vocab, pair.input_text),
            }
        )
    if out_file is not None:
        with open(out_file, "w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(json.dumps(row, ensure_ascii=False) + "\n")
    return rows
