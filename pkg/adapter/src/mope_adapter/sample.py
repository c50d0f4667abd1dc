"""Access to the bundled caption sample used for end-to-end checks."""
from __future__ import annotations

import json
from importlib import resources


def sample_captions_text() -> str:
    """Raw JSONL contents of the bundled captions file."""
    return (resources.files(__package__) / "data" / "captions.jsonl").read_text(
        encoding="utf-8"
    )


def load_sample_captions() -> list[dict]:
    """Bundled captions as a list of {id, text} records."""
    return [json.loads(line) for line in sample_captions_text().splitlines() if line.strip()]
