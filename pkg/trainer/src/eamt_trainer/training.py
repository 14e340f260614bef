"""Fine-tuning: builder JSONL in, checkpoint and loss curve out."""

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import torch
import torch.nn as nn

from eamt_trainer.data import BOS, EOS, PAD, Vocab, read_examples
from eamt_trainer.model import MODEL_PRESETS, Seq2SeqModel

CHECKPOINT_NAME = "model.pt"
LOSS_CURVE_NAME = "loss_curve.jsonl"


@dataclass(frozen=True)
class TrainConfig:
    """Everything one training run depends on.

    The numeric defaults are a conventional fine-tuning recipe (50 epochs,
    learning rate 5e-5, batch 16); at this model scale a run overfits a
    small corpus long before the budget runs out.
    """

    train_file: str
    out_dir: str
    preset: str = "tiny"
    epochs: int = 50
    learning_rate: float = 5e-5
    batch_size: int = 16
    seed: int = 0

    def __post_init__(self):
        if self.preset not in MODEL_PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}; choose from "
                             f"{sorted(MODEL_PRESETS)}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch size must be >= 1, got {self.batch_size}")


def pad_batch(sequences: list[list[int]]) -> torch.Tensor:
    width = max(len(seq) for seq in sequences)
    return torch.tensor([seq + [PAD] * (width - len(seq)) for seq in sequences])


def fine_tune(config: TrainConfig) -> tuple[Path, list[float]]:
    """Train on (input_text -> target_text) pairs and persist the result.

    Writes <out_dir>/model.pt and <out_dir>/loss_curve.jsonl (one record
    per epoch) and returns the checkpoint path with the per-epoch mean
    losses.  Fails with ValueError on a malformed or empty train file.
    """
    print("train config: " + json.dumps(asdict(config)), flush=True)
    pairs = read_examples(config.train_file, require_target=True)
    vocab = Vocab.from_pairs(pairs)
    encoded = [
        (vocab.encode(pair.input_text), [BOS] + vocab.encode(pair.target_text) + [EOS])
        for pair in pairs
    ]

    torch.manual_seed(config.seed)
    model = Seq2SeqModel(len(vocab), MODEL_PRESETS[config.preset])
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    loss_fn = nn.CrossEntropyLoss(ignore_index=PAD)
    shuffler = random.Random(config.seed)

    losses = []
    model.train()
    for _ in range(config.epochs):
        order = list(range(len(encoded)))
        shuffler.shuffle(order)
        total, count = 0.0, 0
        for start in range(0, len(order), config.batch_size):
            batch = [encoded[i] for i in order[start:start + config.batch_size]]
            source = pad_batch([src for src, _ in batch])
            target = pad_batch([tgt for _, tgt in batch])
            logits = model(source, target[:, :-1])
            loss = loss_fn(
                logits.reshape(-1, logits.size(-1)), target[:, 1:].reshape(-1)
            )
            optimizer.zero_grad()
            loss.backward()
            nn.utils.clip_grad_norm_(model.parameters(), 1.0)
            optimizer.step()
            total += loss.item() * len(batch)
            count += len(batch)
        losses.append(total / count)

    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    checkpoint = out_dir / CHECKPOINT_NAME
    torch.save(
        {
            "state_dict": model.state_dict(),
            "vocab": vocab.itos,
            "preset": config.preset,
            "config": asdict(config),
        },
        checkpoint,
    )
    with open(out_dir / LOSS_CURVE_NAME, "w", encoding="utf-8") as handle:
        for epoch, value in enumerate(losses, start=1):
            handle.write(json.dumps({"epoch": epoch, "loss": value}) + "\n")
    return checkpoint, losses


def load_checkpoint(path: str | Path) -> tuple[Seq2SeqModel, Vocab]:
    """Rebuild the model and vocabulary from a fine_tune checkpoint.

    Accepts either the model.pt file or the directory holding it.
    """
    path = Path(path)
    if path.is_dir():
        path = path / CHECKPOINT_NAME
    if not path.is_file():
        raise FileNotFoundError(f"checkpoint not found: {path}")
    payload = torch.load(path, map_location="cpu", weights_only=True)
    vocab = Vocab(payload["vocab"])
    model = Seq2SeqModel(len(vocab), MODEL_PRESETS[payload["preset"]])
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, vocab
