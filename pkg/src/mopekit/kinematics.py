"""Kinematic features of 3D pose-keypoint sequences.

Input poses follow the COCO-Wholebody 133-keypoint layout; each keypoint is
an (x, y, z, confidence) quadruple. Low-confidence keypoints are treated as
missing, and every derived quantity is optional accordingly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIDENCE_THRESHOLD

KEYPOINT_COUNT = 133


class PoseFormatError(ValueError):
    """Raised when a pose payload does not match the expected schema."""


class EmptySignal(ValueError):
    """Raised when a spectral transform is requested for an empty signal."""


class BadCutoff(ValueError):
    """Raised when a high-frequency cutoff bin is outside [0, T)."""


@dataclass(frozen=True)
class JointDef:
    """An angle at `vertex` between the segments vertex->a and vertex->c."""

    name: str
    a: int
    vertex: int
    c: int

    def __post_init__(self) -> None:
        indices = (self.a, self.vertex, self.c)
        if len(set(indices)) != 3:
            raise ValueError(f"joint {self.name!r}: keypoint indices must be distinct")
        for i in indices:
            if not 0 <= i < KEYPOINT_COUNT:
                raise ValueError(
                    f"joint {self.name!r}: keypoint index {i} outside 0..{KEYPOINT_COUNT - 1}"
                )


DEFAULT_JOINTS: tuple[JointDef, ...] = (
    JointDef("left_elbow", 5, 7, 9),
    JointDef("right_elbow", 6, 8, 10),
    JointDef("left_shoulder", 7, 5, 11),
    JointDef("right_shoulder", 8, 6, 12),
    JointDef("left_hip", 5, 11, 13),
    JointDef("right_hip", 6, 12, 14),
    JointDef("left_knee", 11, 13, 15),
    JointDef("right_knee", 12, 14, 16),
    JointDef("left_ankle", 13, 15, 17),
    JointDef("right_ankle", 14, 16, 20),
)


class PoseSequence:
    """One person's keypoint track: an (F, 133, 4) float array plus fps."""

    __slots__ = ("fps", "person_id", "keypoints")

    def __init__(self, fps: float, person_id: str, keypoints: np.ndarray):
        if not fps > 0:
            raise PoseFormatError(f"fps must be > 0, got {fps!r}")
        keypoints = np.asarray(keypoints, dtype=float)
        if keypoints.size == 0:
            keypoints = keypoints.reshape(0, KEYPOINT_COUNT, 4)
        if keypoints.ndim != 3 or keypoints.shape[1:] != (KEYPOINT_COUNT, 4):
            raise PoseFormatError(
                f"keypoints must have shape (frames, {KEYPOINT_COUNT}, 4), "
                f"got {keypoints.shape}"
            )
        self.fps = float(fps)
        self.person_id = person_id
        self.keypoints = keypoints

    @property
    def frame_count(self) -> int:
        return self.keypoints.shape[0]


def _require_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise PoseFormatError(f"{where}: expected a number, got {type(value).__name__}")
    return float(value)


def load_pose_payload(payload) -> tuple[float, list[PoseSequence]]:
    """Validate a {fps, persons: [{person_id, frames}]} payload.

    Frames are lists of 133 [x, y, z, confidence] quadruples with
    confidence in [0, 1]. Raises PoseFormatError naming the offending path.
    """
    if not isinstance(payload, dict):
        raise PoseFormatError("pose payload must be a JSON object")
    fps = _require_number(payload.get("fps"), "fps")
    if not fps > 0:
        raise PoseFormatError(f"fps must be > 0, got {fps}")
    persons = payload.get("persons")
    if not isinstance(persons, list):
        raise PoseFormatError("persons must be a list")
    sequences = []
    for pi, person in enumerate(persons):
        where = f"persons[{pi}]"
        if not isinstance(person, dict):
            raise PoseFormatError(f"{where}: expected an object")
        person_id = person.get("person_id")
        if not isinstance(person_id, str):
            raise PoseFormatError(f"{where}.person_id: expected a string")
        frames = person.get("frames")
        if not isinstance(frames, list):
            raise PoseFormatError(f"{where}.frames: expected a list")
        for fi, frame in enumerate(frames):
            fwhere = f"{where}.frames[{fi}]"
            if not isinstance(frame, list) or len(frame) != KEYPOINT_COUNT:
                raise PoseFormatError(
                    f"{fwhere}: expected a list of {KEYPOINT_COUNT} keypoints"
                )
            for ki, kp in enumerate(frame):
                kwhere = f"{fwhere}[{ki}]"
                if not isinstance(kp, (list, tuple)) or len(kp) != 4:
                    raise PoseFormatError(f"{kwhere}: expected [x, y, z, confidence]")
                for component in kp:
                    _require_number(component, kwhere)
                conf = float(kp[3])
                if not 0.0 <= conf <= 1.0:
                    raise PoseFormatError(
                        f"{kwhere}: confidence {conf} outside [0, 1]"
                    )
        array = (
            np.asarray(frames, dtype=float)
            if frames
            else np.empty((0, KEYPOINT_COUNT, 4))
        )
        sequences.append(PoseSequence(fps, person_id, array))
    return fps, sequences


def load_joint_defs(payload) -> tuple[JointDef, ...]:
    """Validate a JSON array of {name, a, vertex, c} joint definitions."""
    if not isinstance(payload, list) or not payload:
        raise PoseFormatError("joint definitions must be a non-empty JSON array")
    joints = []
    for i, item in enumerate(payload):
        where = f"joints[{i}]"
        if not isinstance(item, dict):
            raise PoseFormatError(f"{where}: expected an object")
        try:
            name = item["name"]
            a, vertex, c = item["a"], item["vertex"], item["c"]
        except KeyError as exc:
            raise PoseFormatError(f"{where}: missing field {exc.args[0]!r}") from None
        if not isinstance(name, str):
            raise PoseFormatError(f"{where}.name: expected a string")
        for field, value in (("a", a), ("vertex", vertex), ("c", c)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise PoseFormatError(f"{where}.{field}: expected an integer")
        try:
            joints.append(JointDef(name, a, vertex, c))
        except ValueError as exc:
            raise PoseFormatError(f"{where}: {exc}") from None
    return tuple(joints)


def point_speed(
    seq: PoseSequence,
    k: int,
    t: int,
    threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
) -> float | None:
    """Speed of keypoint k between frames t-1 and t (length units per second).

    Absent when either frame's keypoint has confidence below the threshold.
    """
    if not 0 <= k < KEYPOINT_COUNT:
        raise IndexError(f"keypoint index {k} outside 0..{KEYPOINT_COUNT - 1}")
    if not 1 <= t < seq.frame_count:
        raise IndexError(f"frame index {t} outside 1..{seq.frame_count - 1}")
    prev = seq.keypoints[t - 1, k]
    cur = seq.keypoints[t, k]
    if prev[3] < threshold or cur[3] < threshold:
        return None
    return float(np.linalg.norm(cur[:3] - prev[:3]) * seq.fps)


def center_of_mass_speed(frame_speeds: list[float | None]) -> float | None:
    """Mean of the present per-keypoint speeds; absent when none are present."""
    present = [s for s in frame_speeds if s is not None]
    if not present:
        return None
    return sum(present) / len(present)


def joint_angle(
    frame: np.ndarray,
    jd: JointDef,
    threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
) -> float | None:
    """Angle in radians at jd.vertex between segments to jd.a and jd.c.

    Present only when all three keypoints have confidence strictly above the
    threshold and both segments have nonzero length.
    """
    frame = np.asarray(frame, dtype=float)
    a, b, c = frame[jd.a], frame[jd.vertex], frame[jd.c]
    if not (a[3] > threshold and b[3] > threshold and c[3] > threshold):
        return None
    u = a[:3] - b[:3]
    v = c[:3] - b[:3]
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return None
    cosine = float(np.dot(u, v) / (nu * nv))
    return math.acos(max(-1.0, min(1.0, cosine)))


def angular_velocity(angles: list[float | None], fps: float) -> list[float | None]:
    """Frame-to-frame angle differences scaled by fps; index 0 is absent."""
    out: list[float | None] = [None] * len(angles)
    for t in range(1, len(angles)):
        prev, cur = angles[t - 1], angles[t]
        if prev is not None and cur is not None:
            out[t] = (cur - prev) * fps
    return out


def mean_present(values: list[float | None]) -> float | None:
    """Mean over present values; absent when none are present."""
    present = [v for v in values if v is not None]
    if not present:
        return None
    return sum(present) / len(present)


def dft(signal: list[float]) -> list[complex]:
    """Discrete Fourier transform X[k] = sum_t x[t] e^{-2πi kt/T}."""
    if len(signal) == 0:
        raise EmptySignal("cannot transform an empty signal")
    return [complex(x) for x in np.fft.fft(np.asarray(signal, dtype=float))]


def fill_gaps(values: list[float | None]) -> list[float]:
    """Linear interpolation across absent samples; edge gaps hold the nearest
    present value; an all-absent series becomes zeros."""
    n = len(values)
    known_x = [i for i, v in enumerate(values) if v is not None]
    if not known_x:
        return [0.0] * n
    known_y = [values[i] for i in known_x]
    filled = np.interp(np.arange(n), known_x, known_y)
    return [float(v) for v in filled]


@dataclass(frozen=True)
class SpectralSummary:
    energy_v: float
    energy_w: float
    highfreq_prop_v: float
    highfreq_prop_w: float
    spectral_std_v: float
    spectral_std_w: float
    cutoff_bin: int

    def to_dict(self) -> dict:
        return {
            "energy_v": self.energy_v,
            "energy_w": self.energy_w,
            "highfreq_prop_v": self.highfreq_prop_v,
            "highfreq_prop_w": self.highfreq_prop_w,
            "spectral_std_v": self.spectral_std_v,
            "spectral_std_w": self.spectral_std_w,
            "cutoff_bin": self.cutoff_bin,
        }


def _spectrum_stats(signal: list[float], cutoff: int) -> tuple[float, float, float]:
    magnitudes = np.abs(np.fft.fft(np.asarray(signal, dtype=float)))
    powers = magnitudes**2
    energy = float(np.sum(powers))
    high = float(np.sum(powers[cutoff + 1 :]))
    proportion = high / energy if energy > 0 else 0.0
    std = float(np.std(magnitudes))
    return energy, proportion, std


def spectral_summary(
    v_signal: list[float],
    w_signal: list[float],
    cutoff_bin: int | None = None,
) -> SpectralSummary:
    """Energy, high-frequency proportion, and magnitude spread of two signals.

    The cutoff defaults to floor(T/4) of the first signal; it must satisfy
    0 <= cutoff < T for both signals (BadCutoff otherwise).
    """
    if len(v_signal) == 0 or len(w_signal) == 0:
        raise EmptySignal("spectral summary needs non-empty signals")
    cutoff = len(v_signal) // 4 if cutoff_bin is None else cutoff_bin
    for name, signal in (("v", v_signal), ("w", w_signal)):
        if not 0 <= cutoff < len(signal):
            raise BadCutoff(
                f"cutoff bin {cutoff} outside 0..{len(signal) - 1} for the {name} signal"
            )
    energy_v, prop_v, std_v = _spectrum_stats(v_signal, cutoff)
    energy_w, prop_w, std_w = _spectrum_stats(w_signal, cutoff)
    return SpectralSummary(
        energy_v=energy_v,
        energy_w=energy_w,
        highfreq_prop_v=prop_v,
        highfreq_prop_w=prop_w,
        spectral_std_v=std_v,
        spectral_std_w=std_w,
        cutoff_bin=cutoff,
    )


@dataclass(frozen=True)
class KinematicFrame:
    t: int
    point_speeds: tuple[float | None, ...]
    v_cm: float | None
    joint_angles: dict[str, float | None]
    joint_angular_velocities: dict[str, float | None]

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "point_speeds": list(self.point_speeds),
            "v_cm": self.v_cm,
            "joint_angles": dict(self.joint_angles),
            "joint_angular_velocities": dict(self.joint_angular_velocities),
        }


@dataclass(frozen=True)
class AnalysisResult:
    frames: tuple[KinematicFrame, ...]
    spectral: SpectralSummary | None
    fallback: bool

    def to_dict(self) -> dict:
        return {
            "fallback": self.fallback,
            "frames": [f.to_dict() for f in self.frames],
            "spectral": self.spectral.to_dict() if self.spectral else None,
        }


def analyze(
    seq: PoseSequence,
    joints: tuple[JointDef, ...] = DEFAULT_JOINTS,
    threshold: float = DEFAULT_CONFIDENCE_THRESHOLD,
    cutoff_bin: int | None = None,
) -> AnalysisResult:
    """Per-frame kinematics plus a spectral summary of the mean-motion signals.

    Degenerate sequences (no keypoint in any frame reaches the confidence
    threshold) return no frames and fallback=True so callers can skip the
    motion-conditioned path entirely. Sequences shorter than two frames have
    no speed series and therefore no spectral summary.
    """
    frame_count = seq.frame_count
    if frame_count == 0 or not bool(np.any(seq.keypoints[:, :, 3] >= threshold)):
        return AnalysisResult(frames=(), spectral=None, fallback=True)

    angle_series: dict[str, list[float | None]] = {
        jd.name: [joint_angle(seq.keypoints[t], jd, threshold) for t in range(frame_count)]
        for jd in joints
    }
    omega_series = {
        name: angular_velocity(series, seq.fps) for name, series in angle_series.items()
    }

    frames = []
    v_series: list[float | None] = []
    w_series: list[float | None] = []
    for t in range(frame_count):
        if t == 0:
            speeds: list[float | None] = [None] * KEYPOINT_COUNT
        else:
            speeds = [point_speed(seq, k, t, threshold) for k in range(KEYPOINT_COUNT)]
        v_cm = center_of_mass_speed(speeds)
        omegas = {name: omega_series[name][t] for name in angle_series}
        frames.append(
            KinematicFrame(
                t=t,
                point_speeds=tuple(speeds),
                v_cm=v_cm,
                joint_angles={name: angle_series[name][t] for name in angle_series},
                joint_angular_velocities=omegas,
            )
        )
        if t >= 1:
            v_series.append(v_cm)
            w_series.append(mean_present(list(omegas.values())))

    spectral = None
    if v_series:
        spectral = spectral_summary(fill_gaps(v_series), fill_gaps(w_series), cutoff_bin)
    return AnalysisResult(frames=tuple(frames), spectral=spectral, fallback=False)
