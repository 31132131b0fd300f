"""Hand-tracking data model and recording file I/O.

A recording is a timestamped sequence of frames, each carrying the left/right
hand states and up to five right-hand fingertip positions in millimeters.
Recordings are stored as line-delimited JSON (one frame per line, UTF-8):

    {"t": 120, "left": "open", "right": "index",
     "f0": null, "f1": [12.0, 180.5, -3.2], "f2": null, "f3": null, "f4": null}

A dataset manifest is line-delimited JSON as well, one sample per line with
keys ``path``, ``label``, ``user``, ``type`` (plus optional ``params``).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import IO, Iterable, Mapping

import numpy as np

from .errors import RecordingParseError, ValidationError

MIN_GESTURE_FRAMES = 7  # +/-3 point feature window needs 7 samples


class LeftHandState(Enum):
    OPEN = "open"
    FIST = "fist"
    ABSENT = "absent"


class RightHandState(Enum):
    OPEN = "open"
    FIST = "fist"
    INDEX_ONLY = "index"
    ABSENT = "absent"


class Finger(IntEnum):
    THUMB = 0
    INDEX = 1
    MIDDLE = 2
    RING = 3
    PINKY = 4


class RecordingSource(Enum):
    FILE = "file"
    LIVE = "live"
    SYNTHETIC = "synthetic"


class GestureType(Enum):
    SINGLE_FINGER = "single"
    MULTI_FINGER = "multi"


@dataclass(frozen=True)
class Point3:
    """One fingertip position: millimeters plus milliseconds since start."""

    x: float
    y: float
    z: float
    t: float = 0.0

    def __post_init__(self):
        for v in (self.x, self.y, self.z, self.t):
            if not math.isfinite(v):
                raise ValidationError(f"non-finite point coordinate: {self}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class Frame:
    """One tracking snapshot: hand states plus right-hand fingertips."""

    t: float
    left: LeftHandState
    right: RightHandState
    fingertips: Mapping[Finger, Point3] = field(default_factory=dict)

    def __post_init__(self):
        tips = dict(self.fingertips)
        if len(tips) > 5:
            raise ValidationError("frame carries more than 5 fingertips")
        if tips and self.right is RightHandState.ABSENT:
            raise ValidationError("fingertips present while right hand absent")
        object.__setattr__(self, "fingertips", tips)

    def fingertip(self, finger: Finger) -> Point3 | None:
        return self.fingertips.get(finger)


@dataclass(frozen=True)
class Recording:
    """Ordered frame stream from one capture session."""

    frames: tuple[Frame, ...]
    source: RecordingSource = RecordingSource.FILE
    user_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        ts = [f.t for f in self.frames]
        for i in range(1, len(ts)):
            if ts[i] <= ts[i - 1]:
                raise ValidationError(
                    f"frame timestamps not strictly increasing at index {i}"
                )

    def __len__(self) -> int:
        return len(self.frames)


class Trajectory:
    """Immutable 3D polyline with per-point timestamps.

    Backed by read-only numpy arrays; ``points`` materializes Point3 views.
    """

    __slots__ = ("xyz", "times")

    def __init__(self, xyz: np.ndarray, times: np.ndarray):
        xyz = np.ascontiguousarray(xyz, dtype=float)
        times = np.ascontiguousarray(times, dtype=float)
        if xyz.ndim != 2 or xyz.shape[1] != 3:
            raise ValidationError(f"trajectory array must be (n, 3), got {xyz.shape}")
        if times.shape != (xyz.shape[0],):
            raise ValidationError("timestamp array length mismatch")
        if xyz.shape[0] < 2:
            raise ValidationError("trajectory needs at least 2 points")
        if not np.all(np.isfinite(xyz)) or not np.all(np.isfinite(times)):
            raise ValidationError("trajectory contains non-finite values")
        if np.any(np.diff(times) <= 0):
            bad = int(np.argmax(np.diff(times) <= 0)) + 1
            raise ValidationError(
                f"trajectory timestamps not strictly increasing at index {bad}"
            )
        xyz.setflags(write=False)
        times.setflags(write=False)
        object.__setattr__(self, "xyz", xyz)
        object.__setattr__(self, "times", times)

    def __setattr__(self, name, value):
        raise AttributeError("Trajectory is immutable")

    @classmethod
    def from_points(cls, points: Iterable[Point3]) -> "Trajectory":
        pts = list(points)
        xyz = np.array([[p.x, p.y, p.z] for p in pts], dtype=float)
        times = np.array([p.t for p in pts], dtype=float)
        return cls(xyz, times)

    @property
    def points(self) -> tuple[Point3, ...]:
        return tuple(
            Point3(float(x), float(y), float(z), float(t))
            for (x, y, z), t in zip(self.xyz, self.times)
        )

    def __len__(self) -> int:
        return self.xyz.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Trajectory)
            and np.array_equal(self.xyz, other.xyz)
            and np.array_equal(self.times, other.times)
        )

    def __repr__(self) -> str:
        return f"Trajectory(n={len(self)})"


@dataclass(frozen=True)
class GestureSample:
    """One spotted gesture: trajectory plus type, optional label and frames."""

    id: str
    label: str | None
    gesture_type: GestureType
    trajectory: Trajectory
    user_id: str = ""
    frames: tuple[Frame, ...] | None = None


# --- recording stream format -------------------------------------------------

_LEFT_VALUES = {s.value: s for s in LeftHandState}
_RIGHT_VALUES = {s.value: s for s in RightHandState}
_FINGER_KEYS = [f"f{i}" for i in range(5)]


def parse_frame_obj(obj: dict, line_number: int = 0) -> Frame:
    """Build a Frame from one decoded recording-line object."""

    def fail(msg: str):
        raise RecordingParseError(line_number, msg)

    if not isinstance(obj, dict):
        fail("frame record must be an object")
    try:
        t = obj["t"]
        left = obj["left"]
        right = obj["right"]
    except KeyError as exc:
        fail(f"missing key {exc.args[0]!r}")
    if not isinstance(t, (int, float)) or isinstance(t, bool):
        fail("'t' must be a number (milliseconds)")
    if left not in _LEFT_VALUES:
        fail(f"unknown left-hand state {left!r}")
    if right not in _RIGHT_VALUES:
        fail(f"unknown right-hand state {right!r}")
    tips: dict[Finger, Point3] = {}
    for i, key in enumerate(_FINGER_KEYS):
        val = obj.get(key)
        if val is None:
            continue
        if (
            not isinstance(val, (list, tuple))
            or len(val) != 3
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in val)
        ):
            fail(f"{key!r} must be null or [x, y, z]")
        tips[Finger(i)] = Point3(float(val[0]), float(val[1]), float(val[2]), float(t))
    try:
        return Frame(float(t), _LEFT_VALUES[left], _RIGHT_VALUES[right], tips)
    except ValidationError as exc:
        fail(str(exc))


def frame_to_obj(frame: Frame) -> dict:
    obj: dict = {
        "t": int(frame.t) if float(frame.t).is_integer() else frame.t,
        "left": frame.left.value,
        "right": frame.right.value,
    }
    for i, key in enumerate(_FINGER_KEYS):
        tip = frame.fingertips.get(Finger(i))
        obj[key] = None if tip is None else [tip.x, tip.y, tip.z]
    return obj


def load_recording(
    stream: IO[bytes] | IO[str] | bytes | str,
    source: RecordingSource = RecordingSource.FILE,
    user_id: str = "",
) -> Recording:
    """Parse a line-delimited recording stream into a Recording.

    Raises RecordingParseError (with line number) on malformed lines and
    ValidationError on non-monotone timestamps.
    """
    if isinstance(stream, (bytes, str)):
        text = stream.decode("utf-8") if isinstance(stream, bytes) else stream
    else:
        raw = stream.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    frames: list[Frame] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordingParseError(lineno, f"invalid JSON: {exc.msg}") from exc
        frames.append(parse_frame_obj(obj, lineno))
    for i in range(1, len(frames)):
        if frames[i].t <= frames[i - 1].t:
            raise ValidationError(
                f"frame timestamps not strictly increasing at index {i}"
            )
    return Recording(tuple(frames), source=source, user_id=user_id)


def dump_recording(recording: Recording) -> str:
    """Serialize a Recording to the line-delimited recording format."""
    lines = [json.dumps(frame_to_obj(f), separators=(",", ":")) for f in recording.frames]
    return "\n".join(lines) + ("\n" if lines else "")


def load_recording_file(path: str | os.PathLike, user_id: str = "") -> Recording:
    with open(path, "r", encoding="utf-8") as fh:
        return load_recording(fh, source=RecordingSource.FILE, user_id=user_id)


def save_recording_file(recording: Recording, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dump_recording(recording))


# --- dataset manifest ---------------------------------------------------------


@dataclass(frozen=True)
class ManifestEntry:
    """One dataset sample: recording path plus its label/user/type."""

    path: str
    label: str
    user: str
    gesture_type: GestureType
    params: Mapping[str, float] = field(default_factory=dict)

    def to_obj(self) -> dict:
        obj = {
            "path": self.path,
            "label": self.label,
            "user": self.user,
            "type": self.gesture_type.value,
        }
        if self.params:
            obj["params"] = dict(self.params)
        return obj


def read_manifest(path: str | os.PathLike) -> list[ManifestEntry]:
    entries: list[ManifestEntry] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordingParseError(lineno, f"invalid manifest JSON: {exc.msg}")
            try:
                gtype = GestureType(obj["type"])
                entries.append(
                    ManifestEntry(
                        path=obj["path"],
                        label=obj["label"],
                        user=obj["user"],
                        gesture_type=gtype,
                        params=obj.get("params", {}),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise RecordingParseError(lineno, f"bad manifest entry: {exc}")
    return entries


def write_manifest(entries: Iterable[ManifestEntry], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for entry in entries:
            fh.write(json.dumps(entry.to_obj(), separators=(",", ":")) + "\n")
