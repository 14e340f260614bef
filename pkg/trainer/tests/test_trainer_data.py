"""Builder-JSONL reading and the word-level vocabulary."""

import json

import pytest

from harness_corpus import build_corpus, write_rows
from eamt_trainer.data import BOS, EOS, PAD, SPECIALS, UNK, Vocab, read_examples


class TestReadExamples:
    def test_reads_all_rows_in_order(self, tmp_path):
        _, rows = build_corpus(n=5)
        path = write_rows(tmp_path / "train.jsonl", rows)
        pairs = read_examples(path)
        assert [p.entry_id for p in pairs] == [r["entry_id"] for r in rows]
        assert pairs[0].input_text == rows[0]["input_text"]
        assert pairs[0].target_text == rows[0]["target_text"]
        assert pairs[0].target_index == 0

    def test_blank_lines_are_skipped(self, tmp_path):
        _, rows = build_corpus(n=2)
        text = "\n" + "\n\n".join(json.dumps(r) for r in rows) + "\n\n"
        path = tmp_path / "train.jsonl"
        path.write_text(text, encoding="utf-8")
        assert len(read_examples(path)) == 2

    def test_empty_file_is_an_error(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError, match="no examples"):
            read_examples(path)

    @pytest.mark.parametrize("line", [
        "not json",
        '{"entry_id": "x"}',
        '{"input_text": "y", "target_text": "z"}',
        '["entry_id", "x"]',
        '{"entry_id": "x", "input_text": "y", "target_text": "z", "target_index": "NaN"}',
    ])
    def test_bad_line_reports_line_number(self, tmp_path, line):
        _, rows = build_corpus(n=1)
        path = tmp_path / "train.jsonl"
        path.write_text(json.dumps(rows[0]) + "\n" + line + "\n", encoding="utf-8")
        with pytest.raises(ValueError, match="line 2"):
            read_examples(path)

    def test_target_optional_for_inference_inputs(self, tmp_path):
        path = tmp_path / "inputs.jsonl"
        path.write_text('{"entry_id": "a", "input_text": "translate this"}\n',
                        encoding="utf-8")
        with pytest.raises(ValueError):
            read_examples(path, require_target=True)
        pairs = read_examples(path, require_target=False)
        assert pairs[0].target_text is None
        assert pairs[0].target_index == 0


class TestVocab:
    def test_specials_occupy_fixed_slots(self):
        vocab = Vocab.from_pairs([])
        assert vocab.itos[:4] == SPECIALS
        assert (PAD, BOS, EOS, UNK) == (0, 1, 2, 3)

    def test_encode_decode_round_trip(self, tmp_path):
        # Word-level: the token sequence survives, not exact whitespace
        # (the zero-entity target legitimately contains a double space).
        _, rows = build_corpus(n=8)
        pairs = read_examples(write_rows(tmp_path / "t.jsonl", rows))
        vocab = Vocab.from_pairs(pairs)
        for pair in pairs:
            decoded = vocab.decode(vocab.encode(pair.target_text))
            assert decoded.split() == pair.target_text.split()

    def test_grammar_markers_are_single_tokens(self, tmp_path):
        _, rows = build_corpus(n=8)
        pairs = read_examples(write_rows(tmp_path / "t.jsonl", rows))
        vocab = Vocab.from_pairs(pairs)
        for marker in ("<SEP>", "<entity>", "</entity>"):
            assert marker in vocab.stoi

    def test_unknown_words_map_to_unk(self):
        vocab = Vocab(SPECIALS + ["known"])
        assert vocab.encode("known stranger") == [4, UNK]

    def test_decode_drops_control_tokens(self):
        vocab = Vocab(SPECIALS + ["w"])
        assert vocab.decode([BOS, 4, PAD, 4, EOS]) == "w w"
