"""Caption-to-artifact pipeline: analysis, serialization, and batch emission.

`to_penman` and `to_conllu` serialize exactly the text they are given;
`batch` chains pronoun resolution in front of them and writes one pair of
artifact files per caption. Captions are independent of each other, so batch
order never affects any output file's bytes.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .amrgen import sentence_to_penman
from .coref import resolve_coreference
from .textproc import Sentence, analyze_text

_ID_PATTERN = re.compile(r"[A-Za-z0-9][A-Za-z0-9._-]*")

_CONLLU_COLUMNS = 10


def to_penman(text: str) -> list[str]:
    """One PENMAN block per sentence of `text`."""
    return [sentence_to_penman(sentence) for sentence in analyze_text(text)]


def _sentence_rows(sentence: Sentence) -> list[str]:
    rows = [f"# text = {sentence.text}"]
    for token in sentence.tokens:
        columns = [
            str(token.index),
            token.form,
            token.lemma or "_",
            token.upos,
            "_",
            "_",
            str(token.head),
            token.deprel,
            "_",
            "_",
        ]
        assert len(columns) == _CONLLU_COLUMNS
        rows.append("\t".join(columns))
    return rows


def to_conllu(text: str) -> str:
    """CoNLL-U serialization of `text`, one block per sentence with `# text` comments."""
    blocks = ["\n".join(_sentence_rows(sentence)) for sentence in analyze_text(text)]
    return "\n\n".join(blocks) + "\n" if blocks else ""


def process_caption(text: str) -> tuple[list[str], str]:
    """Resolve pronouns, then produce (penman blocks, conllu document)."""
    resolved = resolve_coreference(text)
    return to_penman(resolved), to_conllu(resolved)


@dataclass
class BatchResult:
    """Outcome of one batch run over a captions file."""

    written: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    failed: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failed


def _parse_record(line_number: int, line: str) -> tuple[str, str]:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"line {line_number}: invalid JSON: {exc}") from None
    if not isinstance(record, dict):
        raise ValueError(f"line {line_number}: record must be a JSON object")
    caption_id = record.get("id")
    text = record.get("text")
    if not isinstance(caption_id, str) or not _ID_PATTERN.fullmatch(caption_id):
        raise ValueError(
            f"line {line_number}: 'id' must be a string of letters, digits, '.', '_', or '-'"
        )
    if not isinstance(text, str) or not text.strip():
        raise ValueError(f"line {line_number} (id {caption_id}): 'text' must be non-empty")
    return caption_id, text


def batch(in_path: str | Path, out_dir: str | Path, force: bool = False) -> BatchResult:
    """Emit `{id}.penman` and `{id}.conllu` for every caption in a JSONL file.

    A caption whose two artifact files already exist is skipped unless
    `force` is set, so re-running over the same directory is idempotent.
    Malformed input lines are collected as failures without stopping the run.
    """
    in_path = Path(in_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = BatchResult()

    with in_path.open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                caption_id, text = _parse_record(line_number, line)
            except ValueError as exc:
                result.failed.append((f"line {line_number}", str(exc)))
                continue

            penman_path = out_dir / f"{caption_id}.penman"
            conllu_path = out_dir / f"{caption_id}.conllu"
            if not force and penman_path.exists() and conllu_path.exists():
                result.skipped.append(caption_id)
                continue

            try:
                penman_blocks, conllu_doc = process_caption(text)
            except Exception as exc:
                result.failed.append((caption_id, f"processing failed: {exc}"))
                continue
            penman_path.write_text("\n\n".join(penman_blocks) + "\n", encoding="utf-8")
            conllu_path.write_text(conllu_doc, encoding="utf-8")
            result.written.append(caption_id)

    return result
