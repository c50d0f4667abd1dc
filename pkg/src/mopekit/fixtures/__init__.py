"""Bundled desk-scale corpus: caption fixtures with hand-authored gold
outputs, plus synthetic pose-sequence builders with known kinematics."""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from importlib import resources

import numpy as np

from ..amr import AmrGraph, parse_penman_blocks
from ..conllu import DepSentence, parse_conllu
from ..kinematics import KEYPOINT_COUNT, PoseSequence


@dataclass(frozen=True)
class CaptionFixture:
    name: str
    penman: list[str]
    conllu: str
    gold_actions: list[dict]
    gold_rewards_vs_self: dict

    def parse(self) -> tuple[list[AmrGraph], list[DepSentence]]:
        graphs = parse_penman_blocks("\n\n".join(self.penman))
        sentences = parse_conllu(self.conllu)
        return graphs, sentences


def load_caption_fixtures() -> list[CaptionFixture]:
    """All bundled caption fixtures, sorted by name."""
    data_dir = resources.files(__package__) / "data"
    fixtures = []
    for entry in sorted(data_dir.iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".json"):
            continue
        payload = json.loads(entry.read_text(encoding="utf-8"))
        fixtures.append(
            CaptionFixture(
                name=payload["name"],
                penman=list(payload["penman"]),
                conllu=payload["conllu"],
                gold_actions=list(payload["gold_actions"]),
                gold_rewards_vs_self=dict(payload["gold_rewards_vs_self"]),
            )
        )
    return fixtures


def three_four_five_sequence() -> PoseSequence:
    """Two frames, full confidence; keypoint 0 moves (0,0,0)->(3,4,0) at
    fps 1, so its speed at frame 1 is exactly 5.0."""
    kps = np.zeros((2, KEYPOINT_COUNT, 4))
    kps[:, :, 3] = 1.0
    kps[1, 0, :3] = (3.0, 4.0, 0.0)
    return PoseSequence(1.0, "p0", kps)


def degenerate_sequence(frames: int = 3) -> PoseSequence:
    """Every keypoint at zero confidence: nothing is measurable."""
    kps = np.zeros((frames, KEYPOINT_COUNT, 4))
    return PoseSequence(10.0, "p0", kps)


def pendulum_sequence(
    frames: int = 16, fps: float = 5.0, rate: float = 0.25, phase: float = 0.1
) -> PoseSequence:
    """A forearm rotating at a constant `rate` rad/s about a fixed elbow.

    Keypoint 5 (shoulder) sits at (0,1,0), keypoint 7 (elbow) at the origin,
    and keypoint 9 (wrist) at angle phi(t) = phase + rate*t/fps from the
    shoulder direction, so the elbow joint angle is exactly phi(t) while it
    stays inside (0, pi) and the angular velocity is exactly `rate`.
    """
    top = phase + rate * (frames - 1) / fps
    if not (0.0 < phase and top < math.pi):
        raise ValueError("pendulum sweep must stay inside (0, pi)")
    kps = np.zeros((frames, KEYPOINT_COUNT, 4))
    kps[:, :, 3] = 1.0
    kps[:, 5, :3] = (0.0, 1.0, 0.0)
    for t in range(frames):
        phi = phase + rate * t / fps
        kps[t, 9, :3] = (math.sin(phi), math.cos(phi), 0.0)
    return PoseSequence(fps, "p0", kps)


def random_pose_sequence(
    rng: random.Random, frames: int = 8, fps: float = 3.0
) -> PoseSequence:
    """Random positions in [-1,1]^3 and confidences in [0,1]."""
    kps = np.array(
        [
            [
                [
                    rng.uniform(-1, 1),
                    rng.uniform(-1, 1),
                    rng.uniform(-1, 1),
                    rng.random(),
                ]
                for _ in range(KEYPOINT_COUNT)
            ]
            for _ in range(frames)
        ]
    )
    return PoseSequence(fps, "p0", kps)
