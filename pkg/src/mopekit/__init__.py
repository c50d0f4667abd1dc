"""Motion-caption parsing, scoring, and pose-kinematics toolkit.

Three capabilities behind one package:

- extract structured, temporally ordered human-motion actions from caption
  text that has been parsed into semantic graphs (PENMAN) and dependency
  trees (CoNLL-U);
- score a generated caption against a reference with motion-aware rewards
  (action F1, order accuracy, direction accuracy) plus hallucination counts;
- compute per-frame kinematics and spectral summaries of 3D pose sequences.

The FastAPI service in `mopekit.service` exposes each capability over HTTP;
the CLI in `mopekit.cli` is a thin client of that service.
"""
from .amr import (
    AmrGraph,
    PenmanSyntaxError,
    UnknownVariable,
    graphs_equal,
    parse_penman,
    parse_penman_blocks,
    serialize_penman,
)
from .config import (
    DEFAULT_CONFIDENCE_THRESHOLD,
    DEFAULT_WEIGHTS,
    MopeConfig,
    RewardWeights,
    RunConfig,
    load_run_config,
    run_config_from_dict,
)
from .conllu import (
    ConlluFormatError,
    DepSentence,
    DepToken,
    TreeError,
    parse_conllu,
)
from .extraction import MotionAction, run_mope
from .kinematics import (
    DEFAULT_JOINTS,
    AnalysisResult,
    BadCutoff,
    EmptySignal,
    JointDef,
    KinematicFrame,
    PoseFormatError,
    PoseSequence,
    SpectralSummary,
    analyze,
    dft,
    load_joint_defs,
    load_pose_payload,
    spectral_summary,
)
from .rewards import (
    RewardBreakdown,
    action_f1,
    composite_reward,
    direction_accuracy,
    match_actions,
    mo_hall,
    order_accuracy,
    score_actions,
)
from .temporal import ActionGraph, TemporalEdge, order_actions

__version__ = "0.1.0"

__all__ = [
    "AmrGraph",
    "PenmanSyntaxError",
    "UnknownVariable",
    "graphs_equal",
    "parse_penman",
    "parse_penman_blocks",
    "serialize_penman",
    "ConlluFormatError",
    "DepSentence",
    "DepToken",
    "TreeError",
    "parse_conllu",
    "MopeConfig",
    "RewardWeights",
    "RunConfig",
    "DEFAULT_WEIGHTS",
    "DEFAULT_CONFIDENCE_THRESHOLD",
    "load_run_config",
    "run_config_from_dict",
    "MotionAction",
    "run_mope",
    "ActionGraph",
    "TemporalEdge",
    "order_actions",
    "RewardBreakdown",
    "action_f1",
    "order_accuracy",
    "direction_accuracy",
    "match_actions",
    "mo_hall",
    "score_actions",
    "composite_reward",
    "AnalysisResult",
    "BadCutoff",
    "EmptySignal",
    "JointDef",
    "KinematicFrame",
    "PoseFormatError",
    "PoseSequence",
    "SpectralSummary",
    "DEFAULT_JOINTS",
    "analyze",
    "dft",
    "load_joint_defs",
    "load_pose_payload",
    "spectral_summary",
    "__version__",
]
