"""HTTP service exposing caption parsing, caption-pair scoring, and pose
kinematics. The CLI talks to this app in-process by default; `mopekit serve`
runs it behind uvicorn for remote clients."""
from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .amr import PenmanSyntaxError, parse_penman_blocks
from .config import RunConfig, run_config_from_dict
from .conllu import ConlluFormatError, TreeError, parse_conllu
from .extraction import run_mope
from .kinematics import (
    DEFAULT_JOINTS,
    BadCutoff,
    EmptySignal,
    JointDef,
    PoseFormatError,
    analyze,
    load_joint_defs,
    load_pose_payload,
)
from .rewards import score_actions


class JointDefModel(BaseModel):
    model_config = ConfigDict(extra="forbid")
    name: str
    a: int
    vertex: int
    c: int


class ConfigModel(BaseModel):
    """Per-request settings; unset fields keep built-in defaults."""

    model_config = ConfigDict(extra="forbid")
    weights: list[float] | dict[str, float] | None = None
    confidence_threshold: float | None = None
    cutoff_bin: int | None = None
    cross_sentence_edges: bool | None = None
    direction_lexicon: list[str] | None = None
    temporal_connectives_later: list[str] | None = None
    temporal_connectives_earlier: list[str] | None = None
    static_verb_blocklist: list[str] | None = None
    legacy_label_aliases: dict[str, str] | None = None
    joints: list[JointDefModel] | None = None


class CaptionPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    penman: list[str] | str
    conllu: str


class TemporalRelationModel(BaseModel):
    kind: str
    connective: str


class ActionModel(BaseModel):
    id: int
    amr_var: str
    concept: str
    action_verb: str | None
    verb_span: list[int] | None
    subject: str | None
    object: str | None
    direction: str | None
    modifiers: list[str]
    temporal_order: int
    temporal_relation: TemporalRelationModel | None


class ParseRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    caption: CaptionPayload
    config: ConfigModel | None = None


class ParseResponse(BaseModel):
    actions: list[ActionModel]


class ScoreRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    gen: CaptionPayload
    ref: CaptionPayload
    config: ConfigModel | None = None


class ScoreResponse(BaseModel):
    r_action: float
    r_order: float
    r_direction: float
    composite: float
    hall_added: int
    hall_order: int
    hall_direction: int
    mo_hall: float


class PersonPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    person_id: str
    frames: list


class PosePayload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    fps: float
    persons: list[PersonPayload]


class KinematicsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    pose: PosePayload
    config: ConfigModel | None = None


class SpectralModel(BaseModel):
    energy_v: float
    energy_w: float
    highfreq_prop_v: float
    highfreq_prop_w: float
    spectral_std_v: float
    spectral_std_w: float
    cutoff_bin: int


class KinematicFrameModel(BaseModel):
    t: int
    point_speeds: list[float | None]
    v_cm: float | None
    joint_angles: dict[str, float | None]
    joint_angular_velocities: dict[str, float | None]


class PersonAnalysisModel(BaseModel):
    person_id: str
    fallback: bool
    frames: list[KinematicFrameModel]
    spectral: SpectralModel | None


class KinematicsResponse(BaseModel):
    fps: float
    persons: list[PersonAnalysisModel]


def _error(kind: str, message: str, where: str, **extra) -> HTTPException:
    detail = {"kind": kind, "message": message, "where": where}
    detail.update(extra)
    return HTTPException(status_code=422, detail=detail)


def _resolve_config(config: ConfigModel | None) -> tuple[RunConfig, tuple[JointDef, ...]]:
    data = config.model_dump(exclude_none=True) if config else {}
    joints_payload = data.pop("joints", None)
    try:
        run_config = run_config_from_dict(data)
        joints = (
            load_joint_defs(joints_payload) if joints_payload is not None else DEFAULT_JOINTS
        )
    except (ValueError, PoseFormatError) as exc:
        raise _error("config", str(exc), "config") from None
    return run_config, joints


def _parse_caption(caption: CaptionPayload, where: str):
    penman_text = (
        caption.penman if isinstance(caption.penman, str) else "\n\n".join(caption.penman)
    )
    try:
        graphs = parse_penman_blocks(penman_text)
    except PenmanSyntaxError as exc:
        raise _error("penman-syntax", str(exc), where, offset=exc.offset) from None
    try:
        sentences = parse_conllu(caption.conllu)
    except ConlluFormatError as exc:
        raise _error("conllu-format", str(exc), where, line=exc.line) from None
    except TreeError as exc:
        raise _error("dependency-tree", str(exc), where) from None
    return graphs, sentences


def create_app() -> FastAPI:
    app = FastAPI(
        title="mopekit",
        version=__version__,
        description="Motion-caption action extraction, scoring, and pose kinematics.",
    )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/v1/parse", response_model=ParseResponse)
    def parse(request: ParseRequest) -> ParseResponse:
        run_config, _ = _resolve_config(request.config)
        graphs, sentences = _parse_caption(request.caption, "caption")
        actions = run_mope(graphs, sentences, run_config.mope)
        return ParseResponse(actions=[ActionModel(**a.to_dict()) for a in actions])

    @app.post("/v1/score", response_model=ScoreResponse)
    def score(request: ScoreRequest) -> ScoreResponse:
        run_config, _ = _resolve_config(request.config)
        gen_graphs, gen_sentences = _parse_caption(request.gen, "gen")
        ref_graphs, ref_sentences = _parse_caption(request.ref, "ref")
        gen_actions = run_mope(gen_graphs, gen_sentences, run_config.mope)
        ref_actions = run_mope(ref_graphs, ref_sentences, run_config.mope)
        breakdown = score_actions(gen_actions, ref_actions, run_config.weights)
        return ScoreResponse(**breakdown.to_dict())

    @app.post("/v1/kinematics", response_model=KinematicsResponse)
    def kinematics(request: KinematicsRequest) -> KinematicsResponse:
        run_config, joints = _resolve_config(request.config)
        try:
            fps, sequences = load_pose_payload(request.pose.model_dump())
        except PoseFormatError as exc:
            raise _error("pose-format", str(exc), "pose") from None
        persons = []
        for seq in sequences:
            try:
                result = analyze(
                    seq,
                    joints=joints,
                    threshold=run_config.confidence_threshold,
                    cutoff_bin=run_config.cutoff_bin,
                )
            except (BadCutoff, EmptySignal) as exc:
                kind = "bad-cutoff" if isinstance(exc, BadCutoff) else "empty-signal"
                raise _error(kind, str(exc), f"persons[{seq.person_id}]") from None
            payload = result.to_dict()
            persons.append(PersonAnalysisModel(person_id=seq.person_id, **payload))
        return KinematicsResponse(fps=fps, persons=persons)

    return app


app = create_app()
