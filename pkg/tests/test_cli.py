"""Command-line pipeline stages against the checked-in end-to-end fixture."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from eamt.cli import FAILURE, OK, main
from eamt.dataset import parse_dataset

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
DATASET = str(GOLDEN / "input" / "dataset.jsonl")
CANDIDATES = str(GOLDEN / "input" / "candidates.jsonl")
ALIGNMENTS = str(GOLDEN / "input" / "alignments.tsv")
GENERATIONS = str(GOLDEN / "input" / "generations.jsonl")


def expected(name: str) -> bytes:
    return (GOLDEN / "expected" / name).read_bytes()


class TestIngest:
    def test_valid_file(self, tmp_path, capsys):
        assert main(["ingest", DATASET, "--out", str(tmp_path)]) == OK
        assert (tmp_path / "validated.jsonl").read_bytes() == expected("validated.jsonl")
        assert (tmp_path / "ingest_report.json").read_bytes() == expected("ingest_report.json")
        assert json.loads(capsys.readouterr().out) == {"accepted": 3, "rejected": 0}

    def test_lenient_keeps_going(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_bytes(
            Path(DATASET).read_bytes() + b'{"id": "broken"}\n'
        )
        out = tmp_path / "out"
        assert main(["ingest", str(bad), "--out", str(out)]) == OK
        report = json.loads((out / "ingest_report.json").read_text())
        assert report["accepted"] == 3 and report["rejected"] == 1
        assert report["issues"][0]["entry_id"] == "broken"

    def test_strict_aborts(self, tmp_path, capsys):
        bad = tmp_path / "bad.jsonl"
        bad.write_bytes(b'{"id": "broken"}\n')
        assert main(["ingest", str(bad), "--strict", "--out", str(tmp_path)]) == FAILURE
        assert "error:" in capsys.readouterr().err

    def test_missing_input(self, tmp_path, capsys):
        assert main(["ingest", str(tmp_path / "nope.jsonl"), "--out", str(tmp_path)]) == FAILURE
        assert "not found" in capsys.readouterr().err


class TestAlign:
    def test_golden(self, tmp_path, capsys):
        assert main(["align", DATASET, CANDIDATES, ALIGNMENTS, "--out", str(tmp_path)]) == OK
        assert (tmp_path / "entities.jsonl").read_bytes() == expected("entities.jsonl")
        assert json.loads(capsys.readouterr().out) == {"records": 4, "llm": 3, "projected": 1}

    def test_empty_side_inputs(self, tmp_path):
        empty_c = tmp_path / "cands.jsonl"
        empty_a = tmp_path / "aligns.tsv"
        empty_c.write_text("")
        empty_a.write_text("")
        assert main(["align", DATASET, str(empty_c), str(empty_a), "--out", str(tmp_path)]) == OK
        rows = [
            json.loads(line)
            for line in (tmp_path / "entities.jsonl").read_text().splitlines()
        ]
        assert len(rows) == 4  # one per (entry, reference) pair
        assert all(row["entities"] == [] for row in rows)

    def test_idempotent(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        main(["align", DATASET, CANDIDATES, ALIGNMENTS, "--out", str(out1)])
        main(["align", DATASET, CANDIDATES, ALIGNMENTS, "--out", str(out2)])
        assert (out1 / "entities.jsonl").read_bytes() == (out2 / "entities.jsonl").read_bytes()


class TestBuild:
    def test_golden(self, tmp_path, capsys):
        assert main(
            ["build", DATASET, str(GOLDEN / "expected" / "entities.jsonl"), "--out", str(tmp_path)]
        ) == OK
        assert (tmp_path / "examples.jsonl").read_bytes() == expected("examples.jsonl")
        assert json.loads(capsys.readouterr().out) == {"built": 4, "skipped": 0}

    def _unbuildable_entities(self, tmp_path) -> str:
        path = tmp_path / "entities.jsonl"
        row = {
            "entry_id": "Q183_0",
            "target_index": 0,
            "entities": [
                {"source_mention": "Germany", "source_span": [24, 31],
                 "target_mention": "Niemcy", "channel": "llm"}
            ],
        }
        path.write_text(json.dumps(row, ensure_ascii=False) + "\n")
        return str(path)

    def test_unmatchable_mention_skipped_lenient(self, tmp_path, capsys):
        entities = self._unbuildable_entities(tmp_path)
        assert main(["build", DATASET, entities, "--out", str(tmp_path)]) == OK
        assert json.loads(capsys.readouterr().out) == {"built": 0, "skipped": 1}

    def test_unmatchable_mention_fails_strict(self, tmp_path, capsys):
        entities = self._unbuildable_entities(tmp_path)
        assert main(["build", DATASET, entities, "--strict", "--out", str(tmp_path)]) == FAILURE
        assert "Niemcy" in capsys.readouterr().err

    def test_unknown_entry_id_fails(self, tmp_path, capsys):
        path = tmp_path / "entities.jsonl"
        path.write_text('{"entry_id": "GHOST", "target_index": 0, "entities": []}\n')
        assert main(["build", DATASET, str(path), "--out", str(tmp_path)]) == FAILURE
        assert "GHOST" in capsys.readouterr().err


class TestSplit:
    def test_golden(self, tmp_path, capsys):
        assert main(["split", DATASET, "--out", str(tmp_path)]) == OK
        for name in ("train.jsonl", "dev.jsonl", "test.jsonl", "split_manifest.json"):
            assert (tmp_path / name).read_bytes() == expected(name)
        assert json.loads(capsys.readouterr().out) == {"train": 1, "dev": 1, "test": 1}

    def test_partition_with_seed(self, tmp_path):
        data = tmp_path / "ten.jsonl"
        line = json.loads(Path(DATASET).read_text().splitlines()[0])
        rows = []
        for i in range(10):
            row = dict(line)
            row["id"] = f"E{i}"
            rows.append(json.dumps(row, ensure_ascii=False))
        data.write_text("".join(r + "\n" for r in rows))
        assert main(["split", str(data), "--seed", "7", "--out", str(tmp_path)]) == OK
        parts = {
            name: [e.id for e in parse_dataset((tmp_path / f"{name}.jsonl").read_bytes()).entries]
            for name in ("train", "dev", "test")
        }
        assert parts["train"] == ["E8", "E3", "E1", "E4", "E7", "E0"]
        assert parts["dev"] == ["E9", "E6"]
        assert parts["test"] == ["E2", "E5"]
        manifest = json.loads((tmp_path / "split_manifest.json").read_text())
        assert manifest["seed"] == 7


class TestParse:
    def test_golden(self, tmp_path, capsys):
        assert main(["parse", GENERATIONS, "--out", str(tmp_path)]) == OK
        assert (tmp_path / "parsed.jsonl").read_bytes() == expected("parsed.jsonl")
        assert json.loads(capsys.readouterr().out) == {"parsed": 3, "malformed": 1}

    def test_strict_rejects_malformed(self, tmp_path, capsys):
        assert main(["parse", GENERATIONS, "--strict", "--out", str(tmp_path)]) == FAILURE
        assert "malformed" in capsys.readouterr().err


class TestScore:
    def test_golden(self, tmp_path, capsys):
        assert main(["score", GENERATIONS, DATASET, "--out", str(tmp_path)]) == OK
        assert (tmp_path / "score.json").read_bytes() == expected("score.json")
        out = capsys.readouterr().out
        assert "BLEU          100.00" in out
        assert "entity match  100.00" in out

    def test_missing_generations_reported(self, tmp_path, capsys):
        partial = tmp_path / "partial.jsonl"
        partial.write_text(Path(GENERATIONS).read_text().splitlines()[0] + "\n")
        assert main(["score", str(partial), DATASET, "--out", str(tmp_path)]) == OK
        captured = capsys.readouterr()
        assert "missing generation: Q183_0" in captured.err
        assert "missing generation: Q746666_0" in captured.err

    def test_unknown_id_fails(self, tmp_path, capsys):
        rogue = tmp_path / "rogue.jsonl"
        rogue.write_text('{"entry_id": "GHOST", "generation": "x"}\n')
        assert main(["score", str(rogue), DATASET, "--out", str(tmp_path)]) == FAILURE
        assert "GHOST" in capsys.readouterr().err

    def test_empty_generations_fail(self, tmp_path, capsys):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        assert main(["score", str(empty), DATASET, "--out", str(tmp_path)]) == FAILURE

    def test_smooth_and_max_n_flags(self, tmp_path):
        assert main(
            ["score", GENERATIONS, DATASET, "--max-n", "2", "--smooth", "--out", str(tmp_path)]
        ) == OK
        payload = json.loads((tmp_path / "score.json").read_text())
        assert payload["bleu"]["max_n"] == 2
        assert len(payload["bleu"]["precisions"]) == 2


class TestPipeline:
    def test_full_chain_matches_golden(self, tmp_path):
        out = str(tmp_path)
        assert main(["ingest", DATASET, "--out", out]) == OK
        validated = str(tmp_path / "validated.jsonl")
        assert main(["align", validated, CANDIDATES, ALIGNMENTS, "--out", out]) == OK
        assert main(["build", validated, str(tmp_path / "entities.jsonl"), "--out", out]) == OK
        assert main(["split", validated, "--out", out]) == OK
        assert main(["parse", GENERATIONS, "--out", out]) == OK
        assert main(["score", GENERATIONS, validated, "--out", out]) == OK
        for name in (
            "validated.jsonl", "entities.jsonl", "examples.jsonl",
            "train.jsonl", "dev.jsonl", "test.jsonl", "split_manifest.json",
            "parsed.jsonl", "score.json",
        ):
            assert (tmp_path / name).read_bytes() == expected(name), name

    def test_out_dir_created(self, tmp_path):
        nested = tmp_path / "a" / "b" / "c"
        assert main(["ingest", DATASET, "--out", str(nested)]) == OK
        assert (nested / "validated.jsonl").is_file()

    def test_command_required(self):
        with pytest.raises(SystemExit):
            main([])

    def test_module_invocation(self, tmp_path):
        result = subprocess.run(
            [sys.executable, "-m", "eamt.cli", "ingest", DATASET, "--out", str(tmp_path)],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert json.loads(result.stdout) == {"accepted": 3, "rejected": 0}
