"""Command-line pipeline: ingest, align, build, split, parse, score.

Every stage reads and writes UTF-8 JSONL so intermediates stay inspectable
and diffable.  Commands are deterministic: identical inputs produce
byte-identical outputs, with all randomness flowing from --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import alignment, builder, dataset, metrics, parsing, splitting

OK = 0
FAILURE = 2


def _write_jsonl(path: Path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def _write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")


def _require(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    return p


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_entries(path: Path, strict: bool) -> dataset.ParseResult:
    return dataset.load_dataset(path, strict=strict)


def cmd_ingest(args) -> int:
    path = _require(args.dataset)
    result = _load_entries(path, args.strict)
    out = _out_dir(args)
    with open(out / "validated.jsonl", "wb") as fh:
        fh.write(dataset.write_dataset(result.entries))
    report = {
        "accepted": result.accepted,
        "rejected": result.rejected,
        "issues": [
            {"record": r.record, "entry_id": r.entry_id, "reason": str(r.error)}
            for r in result.rejects
        ],
    }
    _write_json(out / "ingest_report.json", report)
    print(json.dumps({"accepted": result.accepted, "rejected": result.rejected}))
    return OK


def _entity_dict(entity: alignment.AlignedEntity) -> dict:
    return {
        "source_mention": entity.source_mention,
        "source_span": list(entity.source_span),
        "target_mention": entity.target_mention,
        "channel": entity.channel,
    }


def cmd_align(args) -> int:
    entries = _load_entries(_require(args.dataset), args.strict).entries
    with open(_require(args.candidates), "r", encoding="utf-8") as fh:
        candidates = alignment.read_candidates(fh)
    with open(_require(args.alignments), "r", encoding="utf-8") as fh:
        alignments = alignment.read_token_alignments(fh)
    out = _out_dir(args)
    records = []
    counts = {alignment.LLM: 0, alignment.PROJECTED: 0}
    for entry in entries:
        for ti, merged in alignment.align_entry(entry, candidates.get(entry.id, []), alignments):
            for ent in merged:
                counts[ent.channel] += 1
            records.append(
                {
                    "entry_id": entry.id,
                    "target_index": ti,
                    "entities": [_entity_dict(e) for e in merged],
                }
            )
    _write_jsonl(out / "entities.jsonl", records)
    print(json.dumps({"records": len(records), "llm": counts[alignment.LLM],
                      "projected": counts[alignment.PROJECTED]}))
    return OK


def _read_entity_records(path: Path):
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                entities = [
                    alignment.AlignedEntity(
                        source_mention=str(e["source_mention"]),
                        source_span=tuple(e.get("source_span", (0, 0))),
                        target_mention=str(e["target_mention"]),
                        channel=str(e.get("channel", alignment.LLM)),
                    )
                    for e in raw["entities"]
                ]
                yield str(raw["entry_id"]), int(raw["target_index"]), entities
            except (KeyError, ValueError) as exc:
                raise ValueError(f"entities line {lineno}: {exc}") from None


def cmd_build(args) -> int:
    entries = {e.id: e for e in _load_entries(_require(args.dataset), args.strict).entries}
    out = _out_dir(args)
    built = []
    skipped = 0
    for entry_id, ti, entities in _read_entity_records(_require(args.entities)):
        entry = entries.get(entry_id)
        if entry is None:
            raise ValueError(f"entities file references unknown entry id {entry_id!r}")
        try:
            example = builder.build_example(entry, ti, entities)
        except builder.MentionMissing:
            if args.strict:
                raise
            skipped += 1
            continue
        built.append(
            {
                "entry_id": example.entry_id,
                "target_index": example.target_index,
                "input_text": example.input_text,
                "target_text": example.target_text,
                "entities": [
                    {"source_mention": e.source_mention, "target_mention": e.target_mention}
                    for e in example.entities
                ],
            }
        )
    _write_jsonl(out / "examples.jsonl", built)
    print(json.dumps({"built": len(built), "skipped": skipped}))
    return OK


def cmd_split(args) -> int:
    path = _require(args.dataset)
    entries = _load_entries(path, args.strict).entries
    spec = splitting.SplitSpec(seed=args.seed)
    train, dev, test = splitting.split_dataset(entries, spec)
    out = _out_dir(args)
    for name, part in (("train", train), ("dev", dev), ("test", test)):
        with open(out / f"{name}.jsonl", "wb") as fh:
            fh.write(dataset.write_dataset(part))
    manifest = splitting.split_manifest(
        spec, path.read_bytes(), (len(train), len(dev), len(test))
    )
    _write_json(out / "split_manifest.json", manifest)
    print(json.dumps(manifest["sizes"]))
    return OK


def cmd_parse(args) -> int:
    with open(_require(args.generations), "r", encoding="utf-8") as fh:
        records = parsing.read_generations(fh)
    out = _out_dir(args)
    rows = []
    for record in records:
        parsed = parsing.parse_generation(record.generation, strict=args.strict)
        row = {"entry_id": record.entry_id}
        if record.target_index is not None:
            row["target_index"] = record.target_index
        row.update(parsing.parsed_to_dict(parsed))
        rows.append(row)
    _write_jsonl(out / "parsed.jsonl", rows)
    malformed = sum(1 for r in rows if r["structure"] != parsing.Structure.WELL_FORMED.value)
    print(json.dumps({"parsed": len(rows), "malformed": malformed}))
    return OK


def _format_report(report: metrics.ScoreReport) -> str:
    bleu = report.bleu
    precisions = "/".join(f"{p * 100:.1f}" for p in bleu.precisions)
    lines = [
        f"BLEU          {bleu.score * 100:.2f}",
        f"precisions    {precisions}",
        f"brevity pen.  {bleu.brevity_penalty:.4f}  (hyp {bleu.hyp_length}, ref {bleu.ref_length})",
        f"entity match  {report.entity_match_rate * 100:.2f}",
        f"items         {report.n_items}  malformed {report.n_malformed}  missing {len(report.missing_ids)}",
    ]
    return "\n".join(lines)


def cmd_score(args) -> int:
    with open(_require(args.generations), "r", encoding="utf-8") as fh:
        generations = parsing.read_generations(fh)
    entries = _load_entries(_require(args.dataset), args.strict).entries
    report = metrics.score_run(
        generations, entries, max_n=args.max_n, smoothing=args.smooth
    )
    out = _out_dir(args)
    _write_json(out / "score.json", metrics.report_to_dict(report))
    print(_format_report(report))
    for entry_id in report.missing_ids:
        print(f"missing generation: {entry_id}", file=sys.stderr)
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strict", action="store_true",
                        help="abort on the first validation failure")
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--out", default="out", help="output directory")

    parser = argparse.ArgumentParser(
        prog="eamt",
        description="Entity-aware machine translation corpus pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="validate a dataset file")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("align", parents=[common],
                       help="produce aligned entities from candidates and word alignments")
    p.add_argument("dataset")
    p.add_argument("candidates")
    p.add_argument("alignments")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("build", parents=[common], help="build multitask fine-tuning pairs")
    p.add_argument("dataset")
    p.add_argument("entities")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("split", parents=[common], help="deterministic train/dev/test split")
    p.add_argument("dataset")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("parse", parents=[common], help="parse raw model generations")
    p.add_argument("generations")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("score", parents=[common], help="score generations against a dataset")
    p.add_argument("generations")
    p.add_argument("dataset")
    p.add_argument("--max-n", type=int, default=4, help="highest n-gram order")
    p.add_argument("--smooth", action="store_true", help="epsilon-smooth zero counts")
    p.set_defaults(func=cmd_score)
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
