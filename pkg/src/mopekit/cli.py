"""Command-line client for the mopekit service.

Every data-processing subcommand sends requests to the HTTP service: by
default an in-process instance of `mopekit.service.app` (no socket, no
subprocess), or a remote instance when `--server URL` is given. Output is
deterministic JSON on stdout; diagnostics go to stderr; exit code 2 marks
input/format errors.
"""
from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

from . import jsonio

EXIT_OK = 0
EXIT_ERROR = 2

_BREAKDOWN_FIELDS = (
    "r_action",
    "r_order",
    "r_direction",
    "composite",
    "hall_added",
    "hall_order",
    "hall_direction",
    "mo_hall",
)


class CliError(Exception):
    """Fatal CLI problem; message goes to stderr, exit code 2."""


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: line {exc.lineno}: invalid JSON: {exc.msg}") from None


def build_config_payload(args) -> dict | None:
    """Merge config file (flag, else MOPEKIT_CONFIG env) with flag overrides."""
    data: dict = {}
    config_path = args.config or os.environ.get("MOPEKIT_CONFIG")
    if config_path:
        loaded = _read_json(config_path)
        if not isinstance(loaded, dict):
            raise CliError(f"{config_path}: config must be a JSON object")
        data.update(loaded)
    joints_file = data.pop("joints_file", None)
    if getattr(args, "joints", None):
        joints_file = args.joints
    if joints_file:
        data["joints"] = _read_json(joints_file)
    if getattr(args, "weights", None):
        parts = args.weights.split(",")
        if len(parts) != 3:
            raise CliError(f"--weights expects three comma-separated numbers, got {args.weights!r}")
        try:
            data["weights"] = [float(p) for p in parts]
        except ValueError:
            raise CliError(f"--weights expects numbers, got {args.weights!r}") from None
    if getattr(args, "threshold", None) is not None:
        data["confidence_threshold"] = args.threshold
    if getattr(args, "cutoff_bin", None) is not None:
        data["cutoff_bin"] = args.cutoff_bin
    if getattr(args, "no_cross_sentence", False):
        data["cross_sentence_edges"] = False
    return data or None


def _post_batch(server: str | None, requests: list[tuple[str, dict]]) -> list[tuple[int, dict]]:
    """POST each (path, body); returns (status, parsed-body) per request."""
    if server:
        with httpx.Client(base_url=server, timeout=120.0) as client:
            return [(r.status_code, r.json()) for r in (client.post(p, json=b) for p, b in requests)]

    async def go():
        from .service import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://service.internal"
        ) as client:
            out = []
            for path, body in requests:
                resp = await client.post(path, json=body)
                out.append((resp.status_code, resp.json()))
            return out

    return asyncio.run(go())


def _post(server: str | None, path: str, body: dict) -> tuple[int, dict]:
    return _post_batch(server, [(path, body)])[0]


def _format_error(payload: dict, file_for_kind: dict[str, str]) -> str:
    """Human-readable diagnostic from a service error body."""
    detail = payload.get("detail", payload)
    if isinstance(detail, dict) and "message" in detail:
        prefix = file_for_kind.get(detail.get("kind", ""), file_for_kind.get("", ""))
        location = ""
        if detail.get("offset") is not None:
            location = f": byte offset {detail['offset']}"
        elif detail.get("line") is not None:
            location = f": line {detail['line']}"
        lead = f"{prefix}{location}: " if prefix else ""
        return f"{lead}{detail['message']}"
    if isinstance(detail, list):
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []))
            parts.append(f"{loc}: {item.get('msg', 'invalid')}")
        return "; ".join(parts)
    return str(detail)


def cmd_parse(args) -> int:
    config = build_config_payload(args)
    body = {
        "caption": {
            "penman": _read_text(args.penman_file),
            "conllu": _read_text(args.conllu_file),
        }
    }
    if config:
        body["config"] = config
    status, payload = _post(args.server, "/v1/parse", body)
    if status != 200:
        raise CliError(
            _format_error(
                payload,
                {
                    "penman-syntax": args.penman_file,
                    "conllu-format": args.conllu_file,
                    "dependency-tree": args.conllu_file,
                },
            )
        )
    print(jsonio.dumps(payload["actions"], indent=2))
    return EXIT_OK


def _score_one(record, config) -> tuple[str | None, dict]:
    """Build the request body for one pairs-file record; None on bad shape."""
    if not isinstance(record, dict):
        return "record must be a JSON object", {}
    body = {}
    for side in ("gen", "ref"):
        caption = record.get(side)
        if not isinstance(caption, dict):
            return f"missing or invalid {side!r} caption object", {}
        penman = caption.get("penman")
        conllu = caption.get("conllu")
        if not isinstance(conllu, str) or not isinstance(penman, (str, list)):
            return f"{side!r} caption needs 'penman' (string or list) and 'conllu' (string)", {}
        body[side] = {"penman": penman, "conllu": conllu}
    if config:
        body["config"] = config
    return None, body


def cmd_score(args) -> int:
    config = build_config_payload(args)
    text = _read_text(args.pairs_file)
    lines = [(i + 1, line) for i, line in enumerate(text.splitlines()) if line.strip()]

    prepared: list[tuple[int, object, str | None, dict | None]] = []
    requests: list[tuple[str, dict]] = []
    for lineno, line in lines:
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            prepared.append((lineno, None, f"invalid JSON: {exc.msg}", None))
            continue
        record_id = record.get("id") if isinstance(record, dict) else None
        problem, body = _score_one(record, config)
        if problem is not None:
            prepared.append((lineno, record_id, problem, None))
        else:
            prepared.append((lineno, record_id, None, body))
            requests.append(("/v1/score", body))

    responses = iter(_post_batch(args.server, requests))
    sums = {f: 0.0 for f in _BREAKDOWN_FIELDS}
    successes = 0
    for lineno, record_id, problem, body in prepared:
        out: dict = {"id": record_id}
        if problem is not None:
            out["line"] = lineno
            out["error"] = problem
        else:
            status, payload = next(responses)
            if status != 200:
                out["line"] = lineno
                out["error"] = _format_error(payload, {})
            else:
                for field in _BREAKDOWN_FIELDS:
                    out[field] = payload[field]
                    sums[field] += payload[field]
                successes += 1
        sys.stdout.write(jsonio.dump_line(out))

    aggregate: dict = {"id": "aggregate", "count": successes}
    for field in _BREAKDOWN_FIELDS:
        aggregate[field] = sums[field] / successes if successes else None
    sys.stdout.write(jsonio.dump_line(aggregate))
    return EXIT_OK


def cmd_kinematics(args) -> int:
    config = build_config_payload(args)
    pose = _read_json(args.pose_file)
    body = {"pose": pose}
    if config:
        body["config"] = config
    status, payload = _post(args.server, "/v1/kinematics", body)
    if status != 200:
        raise CliError(_format_error(payload, {"": args.pose_file}))
    print(jsonio.dumps(payload, indent=2))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .extraction import run_mope
    from .fixtures import (
        degenerate_sequence,
        load_caption_fixtures,
        three_four_five_sequence,
    )
    from .kinematics import analyze, point_speed
    from .rewards import score_actions

    passed = 0
    failed = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal passed, failed
        if ok:
            passed += 1
        else:
            failed += 1
            print(f"FAIL {name}{': ' + detail if detail else ''}", file=sys.stderr)

    for fixture in load_caption_fixtures():
        graphs, sentences = fixture.parse()
        actions = run_mope(graphs, sentences)
        got = [a.to_dict() for a in actions]
        check(f"fixture:{fixture.name}:gold", got == fixture.gold_actions)
        breakdown = score_actions(actions, actions).to_dict()
        check(
            f"fixture:{fixture.name}:self-score",
            breakdown == fixture.gold_rewards_vs_self,
            f"got {breakdown}",
        )

    check("pose:3-4-5-speed", point_speed(three_four_five_sequence(), 0, 1) == 5.0)
    degenerate = analyze(degenerate_sequence())
    check("pose:degenerate-fallback", degenerate.fallback and not degenerate.frames)

    total = passed + failed
    print(f"{passed}/{total} checks passed")
    return EXIT_OK if failed == 0 else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("mopekit.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mopekit",
        description=(
            "Extract ordered motion actions from parsed captions, score "
            "caption pairs, and compute pose kinematics."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (or set MOPEKIT_CONFIG)")
    common.add_argument("--weights", help="composite weights as 'a,o,d' (sums to 1)")
    common.add_argument("--threshold", type=float, help="keypoint confidence threshold")
    common.add_argument("--cutoff-bin", type=int, help="high-frequency cutoff bin")
    common.add_argument("--joints", help="JSON file of joint definitions")
    common.add_argument(
        "--no-cross-sentence",
        action="store_true",
        help="do not link the last action of one sentence to the first of the next",
    )
    common.add_argument("--server", help="remote service URL (default: in-process)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="extract actions from one parsed caption")
    p.add_argument("penman_file", help="semantic graphs, blank-line separated")
    p.add_argument("conllu_file", help="dependency trees for the same sentences")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("score", parents=[common], help="score generated-vs-reference pairs")
    p.add_argument("pairs_file", help="JSON-lines: {id, gen: {penman, conllu}, ref: {...}}")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("kinematics", parents=[common], help="analyze a pose-sequence file")
    p.add_argument("pose_file", help="JSON: {fps, persons: [{person_id, frames}]}")
    p.set_defaults(func=cmd_kinematics)

    p = sub.add_parser("selftest", parents=[common], help="run the embedded fixture suite")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
