"""Configuration records for extraction, scoring, and the CLI/service."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

DEFAULT_DIRECTION_LEXICON = frozenset(
    {
        "forward",
        "backward",
        "left",
        "right",
        "up",
        "down",
        "upward",
        "downward",
        "clockwise",
        "counterclockwise",
    }
)
DEFAULT_CONNECTIVES_LATER = frozenset({"after", "since", "once", "following", "upon"})
DEFAULT_CONNECTIVES_EARLIER = frozenset({"before", "until", "when", "while"})
DEFAULT_STATIC_VERBS = frozenset(
    {"see-01", "want-01", "know-01", "believe-01", "resemble-01", "have-03", "be-01"}
)
# Older dependency label schemes mapped onto the current one. The
# prep/pobj shape has no single-label equivalent and is handled
# structurally where prepositional phrases are read.
DEFAULT_LABEL_ALIASES = {
    "dobj": "obj",
    "auxpass": "aux:pass",
    "nsubjpass": "nsubj:pass",
}


@dataclass(frozen=True)
class MopeConfig:
    direction_lexicon: frozenset[str] = DEFAULT_DIRECTION_LEXICON
    temporal_connectives_later: frozenset[str] = DEFAULT_CONNECTIVES_LATER
    temporal_connectives_earlier: frozenset[str] = DEFAULT_CONNECTIVES_EARLIER
    static_verb_blocklist: frozenset[str] = DEFAULT_STATIC_VERBS
    legacy_label_aliases: dict[str, str] = field(
        default_factory=lambda: dict(DEFAULT_LABEL_ALIASES)
    )
    cross_sentence_edges: bool = True

    def __post_init__(self):
        overlap = self.temporal_connectives_later & self.temporal_connectives_earlier
        if overlap:
            raise ValueError(f"connective sets overlap: {sorted(overlap)}")

    def canonical(self, deprel: str) -> str:
        """Map a legacy dependency label to its current equivalent."""
        return self.legacy_label_aliases.get(deprel, deprel)

    @property
    def temporal_connectives(self) -> frozenset[str]:
        return self.temporal_connectives_later | self.temporal_connectives_earlier


@dataclass(frozen=True)
class RewardWeights:
    """Component weights for the composite reward.

    The given triple must be non-negative and sum to 1 within 1e-9; w_d is
    then pinned to 1 - w_a - w_o so the stored triple sums to exactly 1.0
    (a perfect parse must score a composite of exactly 1.0).
    """

    w_action: float = 1.0 / 3.0
    w_order: float = 1.0 / 3.0
    w_direction: float = 1.0 / 3.0

    def __post_init__(self):
        for name, w in (
            ("w_action", self.w_action),
            ("w_order", self.w_order),
            ("w_direction", self.w_direction),
        ):
            if w < 0:
                raise ValueError(f"{name} must be non-negative, got {w}")
        total = self.w_action + self.w_order + self.w_direction
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1 (got {total!r})")
        object.__setattr__(self, "w_direction", max(0.0, 1.0 - self.w_action - self.w_order))


DEFAULT_WEIGHTS = RewardWeights()
DEFAULT_CONFIDENCE_THRESHOLD = 0.6


@dataclass
class RunConfig:
    """Resolved settings for one CLI/service invocation."""

    weights: RewardWeights = field(default_factory=RewardWeights)
    mope: MopeConfig = field(default_factory=MopeConfig)
    confidence_threshold: float = DEFAULT_CONFIDENCE_THRESHOLD
    cutoff_bin: int | None = None
    joints_file: str | None = None
    cross_sentence_edges: bool = True

    def __post_init__(self):
        if self.mope.cross_sentence_edges != self.cross_sentence_edges:
            self.mope = replace(self.mope, cross_sentence_edges=self.cross_sentence_edges)


def _as_frozenset(value, name: str) -> frozenset[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValueError(f"{name} must be a list of strings")
    return frozenset(v.lower() for v in value)


def mope_config_from_dict(data: dict) -> MopeConfig:
    kwargs = {}
    if "direction_lexicon" in data:
        kwargs["direction_lexicon"] = _as_frozenset(data["direction_lexicon"], "direction_lexicon")
    if "temporal_connectives_later" in data:
        kwargs["temporal_connectives_later"] = _as_frozenset(
            data["temporal_connectives_later"], "temporal_connectives_later"
        )
    if "temporal_connectives_earlier" in data:
        kwargs["temporal_connectives_earlier"] = _as_frozenset(
            data["temporal_connectives_earlier"], "temporal_connectives_earlier"
        )
    if "static_verb_blocklist" in data:
        kwargs["static_verb_blocklist"] = _as_frozenset(
            data["static_verb_blocklist"], "static_verb_blocklist"
        )
    if "legacy_label_aliases" in data:
        aliases = data["legacy_label_aliases"]
        if not isinstance(aliases, dict):
            raise ValueError("legacy_label_aliases must be an object")
        kwargs["legacy_label_aliases"] = {str(k): str(v) for k, v in aliases.items()}
    if "cross_sentence_edges" in data:
        kwargs["cross_sentence_edges"] = bool(data["cross_sentence_edges"])
    return MopeConfig(**kwargs)


def run_config_from_dict(data: dict) -> RunConfig:
    """Build a RunConfig from a parsed JSON config file."""
    weights = DEFAULT_WEIGHTS
    if "weights" in data:
        w = data["weights"]
        if isinstance(w, list) and len(w) == 3:
            weights = RewardWeights(float(w[0]), float(w[1]), float(w[2]))
        elif isinstance(w, dict):
            weights = RewardWeights(
                float(w.get("w_action", 1.0 / 3.0)),
                float(w.get("w_order", 1.0 / 3.0)),
                float(w.get("w_direction", 1.0 / 3.0)),
            )
        else:
            raise ValueError("weights must be a 3-list or an object")
    mope = mope_config_from_dict(data)
    return RunConfig(
        weights=weights,
        mope=mope,
        confidence_threshold=float(data.get("confidence_threshold", DEFAULT_CONFIDENCE_THRESHOLD)),
        cutoff_bin=(int(data["cutoff_bin"]) if data.get("cutoff_bin") is not None else None),
        joints_file=data.get("joints_file"),
        cross_sentence_edges=bool(data.get("cross_sentence_edges", mope.cross_sentence_edges)),
    )


def load_run_config(path: str | Path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return run_config_from_dict(data)
