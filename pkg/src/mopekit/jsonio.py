"""Deterministic JSON output.

Emits byte-identical text for equal inputs: insertion-ordered keys, floats
rendered as their shortest round-trip form capped at 9 significant digits,
and no locale- or hash-dependent behavior. Used for all CLI/service output
so golden files diff cleanly.
"""
from __future__ import annotations

import json
import math


def format_float(x: float) -> str:
    """Shortest round-trip decimal form, capped at 9 significant digits."""
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite float {x!r} is not representable in JSON")
    text = repr(x)
    mantissa = text.split("e")[0].split("E")[0]
    digits = mantissa.replace("-", "").replace(".", "").strip("0")
    if len(digits) <= 9:
        return text
    return format(x, ".9g")


def _write(obj, out: list[str], indent: int | None, level: int) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(repr(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        _write_items(
            ((k, v) for k, v in obj.items()), len(obj), "{", "}", out, indent, level, True
        )
    elif isinstance(obj, (list, tuple)):
        _write_items(
            ((None, v) for v in obj), len(obj), "[", "]", out, indent, level, False
        )
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_items(items, count, open_ch, close_ch, out, indent, level, keyed) -> None:
    if count == 0:
        out.append(open_ch + close_ch)
        return
    out.append(open_ch)
    newline = "\n" + " " * (indent * (level + 1)) if indent is not None else ""
    sep = "," + (newline if indent is not None else "")
    first = True
    for key, value in items:
        out.append(newline if first else sep)
        first = False
        if keyed:
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {type(key).__name__}")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(": " if indent is not None else ":")
        _write(value, out, indent, level + 1)
    if indent is not None:
        out.append("\n" + " " * (indent * level))
    out.append(close_ch)


def dumps(obj, indent: int | None = None) -> str:
    """Serialize deterministically; `indent` switches to pretty-printed form."""
    out: list[str] = []
    _write(obj, out, indent, 0)
    return "".join(out)


def dump_line(obj) -> str:
    """One compact JSON-lines record, newline included."""
    return dumps(obj, indent=None) + "\n"
