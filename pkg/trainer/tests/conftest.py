"""Fixtures: a 32-example training corpus and one timed overfit run.

The overfit run is session-scoped because training, while only a few
seconds, is the slowest thing in this suite.
"""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from eamt.dataset import write_dataset
from harness_corpus import OVERFIT, build_corpus, write_rows

from eamt_trainer.training import TrainConfig, fine_tune


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    """dict with train_file, dataset_file and the raw rows."""
    root = tmp_path_factory.mktemp("corpus")
    entries, rows = build_corpus()
    train_file = write_rows(root / "train.jsonl", rows)
    dataset_file = root / "dataset.jsonl"
    dataset_file.write_bytes(write_dataset(entries))
    return {"train_file": train_file, "dataset_file": dataset_file, "rows": rows}


@pytest.fixture(scope="session")
def overfit_run(corpus, tmp_path_factory):
    """One tiny-preset training run on the 32-example corpus, timed."""
    out_dir = tmp_path_factory.mktemp("overfit")
    config = TrainConfig(
        train_file=str(corpus["train_file"]), out_dir=str(out_dir), **OVERFIT
    )
    started = time.perf_counter()
    checkpoint, losses = fine_tune(config)
    elapsed = time.perf_counter() - started
    return {
        "config": config,
        "checkpoint": checkpoint,
        "losses": losses,
        "elapsed": elapsed,
        "out_dir": out_dir,
        **corpus,
    }
