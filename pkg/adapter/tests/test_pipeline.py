"""Tests for batch emission semantics and the command-line interface."""
from __future__ import annotations

import json

import pytest

from mope_adapter import batch
from mope_adapter.cli import main


def write_captions(path, records):
    path.write_text(
        "".join(json.dumps(record) + "\n" for record in records), encoding="utf-8"
    )


@pytest.fixture
def captions_file(tmp_path):
    path = tmp_path / "captions.jsonl"
    write_captions(
        path,
        [
            {"id": "a1", "text": "The man walks forward."},
            {"id": "b2", "text": "The dancer spins. She jumps."},
        ],
    )
    return path


class TestBatch:
    def test_writes_both_artifacts_per_caption(self, captions_file, tmp_path):
        out = tmp_path / "out"
        result = batch(captions_file, out)
        assert result.written == ["a1", "b2"]
        assert result.skipped == [] and result.failed == []
        for caption_id in ("a1", "b2"):
            assert (out / f"{caption_id}.penman").exists()
            assert (out / f"{caption_id}.conllu").exists()

    def test_rerun_skips_existing_ids(self, captions_file, tmp_path):
        out = tmp_path / "out"
        batch(captions_file, out)
        before = {p.name: p.stat().st_mtime_ns for p in out.iterdir()}
        result = batch(captions_file, out)
        assert result.written == [] and result.skipped == ["a1", "b2"]
        after = {p.name: p.stat().st_mtime_ns for p in out.iterdir()}
        assert after == before

    def test_missing_artifact_triggers_rewrite(self, captions_file, tmp_path):
        out = tmp_path / "out"
        batch(captions_file, out)
        (out / "a1.penman").unlink()
        result = batch(captions_file, out)
        assert result.written == ["a1"] and result.skipped == ["b2"]
        assert (out / "a1.penman").exists()

    def test_force_rewrites_everything(self, captions_file, tmp_path):
        out = tmp_path / "out"
        batch(captions_file, out)
        result = batch(captions_file, out, force=True)
        assert result.written == ["a1", "b2"] and result.skipped == []

    def test_rewrite_is_byte_identical(self, captions_file, tmp_path):
        out = tmp_path / "out"
        batch(captions_file, out)
        first = (out / "a1.penman").read_bytes(), (out / "a1.conllu").read_bytes()
        batch(captions_file, out, force=True)
        second = (out / "a1.penman").read_bytes(), (out / "a1.conllu").read_bytes()
        assert second == first

    def test_coreference_applied_before_emission(self, captions_file, tmp_path):
        out = tmp_path / "out"
        batch(captions_file, out)
        conllu = (out / "b2.conllu").read_text(encoding="utf-8")
        assert "# text = The dancer jumps." in conllu

    def test_blank_lines_ignored(self, tmp_path):
        path = tmp_path / "captions.jsonl"
        path.write_text(
            '\n{"id": "a1", "text": "The man walks."}\n\n', encoding="utf-8"
        )
        result = batch(path, tmp_path / "out")
        assert result.written == ["a1"] and result.failed == []


class TestBatchFailures:
    def test_invalid_json_line_is_soft_failure(self, tmp_path):
        path = tmp_path / "captions.jsonl"
        path.write_text(
            'not json\n{"id": "ok1", "text": "The man walks."}\n', encoding="utf-8"
        )
        result = batch(path, tmp_path / "out")
        assert result.written == ["ok1"]
        assert len(result.failed) == 1 and "line 1" in result.failed[0][0]

    @pytest.mark.parametrize(
        "record",
        [
            {"text": "The man walks."},
            {"id": 7, "text": "The man walks."},
            {"id": "bad/slash", "text": "The man walks."},
            {"id": "", "text": "The man walks."},
            {"id": "x1"},
            {"id": "x1", "text": ""},
            {"id": "x1", "text": "   "},
            {"id": "x1", "text": 5},
        ],
    )
    def test_invalid_records_rejected(self, tmp_path, record):
        path = tmp_path / "captions.jsonl"
        write_captions(path, [record, {"id": "ok1", "text": "The man walks."}])
        result = batch(path, tmp_path / "out")
        assert result.written == ["ok1"]
        assert len(result.failed) == 1

    def test_array_line_rejected(self, tmp_path):
        path = tmp_path / "captions.jsonl"
        path.write_text('["id", "text"]\n', encoding="utf-8")
        result = batch(path, tmp_path / "out")
        assert result.written == [] and len(result.failed) == 1

    def test_duplicate_id_in_same_run_skips_second(self, tmp_path):
        path = tmp_path / "captions.jsonl"
        write_captions(
            path,
            [
                {"id": "a1", "text": "The man walks."},
                {"id": "a1", "text": "The dog runs."},
            ],
        )
        result = batch(path, tmp_path / "out")
        assert result.written == ["a1"] and result.skipped == ["a1"]
        penman = (tmp_path / "out" / "a1.penman").read_text(encoding="utf-8")
        assert "walk-01" in penman


class TestCli:
    def test_batch_success(self, captions_file, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["batch", "--in", str(captions_file), "--out", str(out)])
        assert code == 0
        stderr = capsys.readouterr().err
        assert "wrote a1" in stderr
        assert "batch: 2 written, 0 skipped, 0 failed" in stderr
        assert (out / "b2.penman").exists()

    def test_batch_skip_then_force(self, captions_file, tmp_path, capsys):
        out = tmp_path / "out"
        main(["batch", "--in", str(captions_file), "--out", str(out)])
        capsys.readouterr()
        code = main(["batch", "--in", str(captions_file), "--out", str(out)])
        assert code == 0
        assert "skipped a1 (artifacts exist)" in capsys.readouterr().err
        code = main(
            ["batch", "--in", str(captions_file), "--out", str(out), "--force"]
        )
        assert code == 0
        assert "wrote a1" in capsys.readouterr().err

    def test_failures_set_exit_code(self, tmp_path, capsys):
        path = tmp_path / "captions.jsonl"
        path.write_text('nope\n{"id": "ok1", "text": "The man walks."}\n')
        code = main(["batch", "--in", str(path), "--out", str(tmp_path / "out")])
        assert code == 1
        stderr = capsys.readouterr().err
        assert "failed line 1" in stderr
        assert "batch: 1 written, 0 skipped, 1 failed" in stderr

    def test_missing_input_file(self, tmp_path, capsys):
        code = main(
            ["batch", "--in", str(tmp_path / "absent.jsonl"), "--out", str(tmp_path / "o")]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_batch_requires_in_and_out(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["batch", "--in", "x.jsonl"])
        assert excinfo.value.code == 2
