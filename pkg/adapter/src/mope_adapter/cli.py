"""Command-line entry point: `adapter batch --in captions.jsonl --out dir/`."""
from __future__ import annotations

import argparse
import sys

from .pipeline import batch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Turn caption text into PENMAN and CoNLL-U artifact files.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    batch_parser = subparsers.add_parser(
        "batch", help="process a JSONL captions file into an output directory"
    )
    batch_parser.add_argument(
        "--in",
        dest="in_path",
        required=True,
        metavar="captions.jsonl",
        help="input JSON-lines file with {id, text} records",
    )
    batch_parser.add_argument(
        "--out",
        dest="out_dir",
        required=True,
        metavar="dir",
        help="directory receiving {id}.penman and {id}.conllu files",
    )
    batch_parser.add_argument(
        "--force",
        action="store_true",
        help="rewrite artifacts even when both files for an id already exist",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "batch":  # argparse enforces this; kept for clarity
        return 2

    try:
        result = batch(args.in_path, args.out_dir, force=args.force)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    for caption_id in result.written:
        print(f"wrote {caption_id}", file=sys.stderr)
    for caption_id in result.skipped:
        print(f"skipped {caption_id} (artifacts exist)", file=sys.stderr)
    for subject, message in result.failed:
        print(f"failed {subject}: {message}", file=sys.stderr)
    print(
        f"batch: {len(result.written)} written, {len(result.skipped)} skipped, "
        f"{len(result.failed)} failed",
        file=sys.stderr,
    )
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
