"""Reading builder-format JSONL and mapping text to token ids.

The upstream pipeline emits one JSON object per line with input_text,
target_text, entry_id and target_index.  The model is word-level: text is
split on whitespace, so the grammar markers (<SEP>, <entity>, </entity>,
|) each become single vocabulary items straight from the training data.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

PAD, BOS, EOS, UNK = 0, 1, 2, 3
SPECIALS = ["<pad>", "<bos>", "<eos>", "<unk>"]


@dataclass(frozen=True)
class ExamplePair:
    """One training or inference row from a builder JSONL file."""

    entry_id: str
    target_index: int
    input_text: str
    target_text: Optional[str] = None


def read_examples(path: str | Path, require_target: bool = True) -> list[ExamplePair]:
    """Load builder rows from a JSONL file.

    With require_target=True (training) every row must carry target_text;
    inference inputs may omit it.  Raises ValueError on unparseable lines,
    missing fields, or an empty file.
    """
    pairs = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                if not isinstance(raw, dict):
                    raise TypeError("not a JSON object")
                target = raw["target_text"] if require_target else raw.get("target_text")
                pairs.append(
                    ExamplePair(
                        entry_id=str(raw["entry_id"]),
                        target_index=int(raw.get("target_index", 0)),
                        input_text=str(raw["input_text"]),
                        target_text=None if target is None else str(target),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    if not pairs:
        raise ValueError(f"{path}: no examples found")
    return pairs


class Vocab:
    """Word-level vocabulary with reserved pad/bos/eos/unk slots."""

    def __init__(self, itos: Sequence[str]):
        self.itos = list(itos)
        self.stoi = {word: i for i, word in enumerate(self.itos)}

    @classmethod
    def from_pairs(cls, pairs: Sequence[ExamplePair]) -> "Vocab":
        words = set()
        for pair in pairs:
            words.update(pair.input_text.split())
            if pair.target_text is not None:
                words.update(pair.target_text.split())
        return cls(SPECIALS + sorted(words))

    def __len__(self) -> int:
        return len(self.itos)

    def encode(self, text: str) -> list[int]:
        return [self.stoi.get(word, UNK) for word in text.split()]

    def decode(self, ids: Sequence[int]) -> str:
        return " ".join(self.itos[i] for i in ids if i not in (PAD, BOS, EOS))
