"""Command-line front end: finetune a model, then generate from it.

Mirrors the corpus pipeline's conventions — positional file arguments,
deterministic outputs under a fixed --seed, exit code 2 with an error
line on stderr for bad inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from eamt_trainer.generation import generate
from eamt_trainer.training import LOSS_CURVE_NAME, TrainConfig, fine_tune

OK = 0
FAILURE = 2


def cmd_finetune(args) -> int:
    config = TrainConfig(
        train_file=args.train_file,
        out_dir=args.out,
        preset=args.preset,
        epochs=args.epochs,
        learning_rate=args.lr,
        batch_size=args.batch_size,
        seed=args.seed,
    )
    checkpoint, losses = fine_tune(config)
    print(json.dumps({
        "checkpoint": str(checkpoint),
        "loss_curve": str(Path(args.out) / LOSS_CURVE_NAME),
        "first_loss": losses[0],
        "final_loss": losses[-1],
    }))
    return OK


def cmd_generate(args) -> int:
    if not Path(args.inputs).is_file():
        raise FileNotFoundError(f"input file not found: {args.inputs}")
    rows = generate(args.checkpoint, args.inputs, out_file=args.out)
    print(json.dumps({"generated": len(rows), "out": args.out}))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eamt-trainer",
        description="toy fine-tune/generate harness for multitask translation examples",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("finetune", help="train a small model on builder JSONL")
    p.add_argument("train_file")
    p.add_argument("--out", default="run", help="directory for checkpoint and loss curve")
    p.add_argument("--preset", default="tiny", choices=["tiny", "small"],
                   help="model size")
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--lr", type=float, default=5e-5, help="learning rate")
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.set_defaults(func=cmd_finetune)

    p = sub.add_parser("generate", help="greedy-decode a builder-format inputs file")
    p.add_argument("checkpoint", help="checkpoint file or its directory")
    p.add_argument("inputs")
    p.add_argument("--out", default="generations.jsonl", help="output JSONL file")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


def entrypoint() -> None:  # console-script shim
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
