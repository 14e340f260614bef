"""Deterministic train/dev/test partitioning.

Entries are shuffled with the Mersenne Twister (CPython's ``random.Random``,
whose shuffle is stable across platforms and versions) and cut by two
cascaded splits with floor on the retained side:

    kept  = floor((1 - first_test_fraction) * N);   test = N - kept
    train = floor((1 - second_dev_fraction) * kept); dev = kept - train

With the default 0.2 fractions this reproduces the published per-language
train/dev/test sizes exactly (e.g. 4087 -> 2615/654/818).
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .dataset import DatasetEntry

__all__ = ["SplitSpec", "EmptyDataset", "split_dataset", "split_sizes", "split_manifest"]

SHUFFLE_ALGORITHM = "fisher-yates over mt19937 (python random.Random(seed).shuffle)"


class EmptyDataset(ValueError):
    pass


@dataclass(frozen=True)
class SplitSpec:
    seed: int = 0
    first_test_fraction: float = 0.2
    second_dev_fraction: float = 0.2

    def __post_init__(self):
        for f in (self.first_test_fraction, self.second_dev_fraction):
            if not 0.0 < f < 1.0:
                raise ValueError(f"split fraction {f} outside (0, 1)")


def split_sizes(n: int, spec: SplitSpec = SplitSpec()) -> tuple[int, int, int]:
    """(train, dev, test) sizes for a dataset of n entries."""
    kept = math.floor((1.0 - spec.first_test_fraction) * n)
    test = n - kept
    train = math.floor((1.0 - spec.second_dev_fraction) * kept)
    dev = kept - train
    return train, dev, test


def split_dataset(
    entries: Sequence[DatasetEntry], spec: SplitSpec = SplitSpec()
) -> tuple[list[DatasetEntry], list[DatasetEntry], list[DatasetEntry]]:
    """Shuffle deterministically and partition into train/dev/test."""
    if not entries:
        raise EmptyDataset("cannot split an empty dataset")
    shuffled = list(entries)
    random.Random(spec.seed).shuffle(shuffled)
    n_train, n_dev, _ = split_sizes(len(shuffled), spec)
    train = shuffled[:n_train]
    dev = shuffled[n_train : n_train + n_dev]
    test = shuffled[n_train + n_dev :]
    return train, dev, test


def split_manifest(spec: SplitSpec, input_bytes: bytes, sizes: tuple[int, int, int]) -> dict:
    """Reproducibility record emitted next to the split files."""
    return {
        "seed": spec.seed,
        "algorithm": SHUFFLE_ALGORITHM,
        "rule": (
            f"kept=floor({1.0 - spec.first_test_fraction:g}*N), test=N-kept; "
            f"train=floor({1.0 - spec.second_dev_fraction:g}*kept), dev=kept-train"
        ),
        "first_test_fraction": spec.first_test_fraction,
        "second_dev_fraction": spec.second_dev_fraction,
        "input_sha256": hashlib.sha256(input_bytes).hexdigest(),
        "sizes": {"train": sizes[0], "dev": sizes[1], "test": sizes[2]},
    }
