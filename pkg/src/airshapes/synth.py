"""Parametric generator of noisy gesture recordings for the shape dictionary.

Each sample follows its class's canonical curve with a random size, placement,
and small rotation, plus additive jitter, a monotone speed warp, and (for
closed curves) start-phase jitter. Multi-finger samples carry five fingertip
streams with fixed grip offsets around a virtual palm, sized so the
thumb-to-middle distance equals the object's cross-section diameter exactly.

Randomness derives from (seed, class index, sample index), so parallel and
serial generation agree sample for sample.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import curves
from .errors import UnknownLabelError
from .tracking import (
    Finger,
    Frame,
    GestureSample,
    GestureType,
    LeftHandState,
    ManifestEntry,
    Point3,
    Recording,
    RecordingSource,
    RightHandState,
    save_recording_file,
    write_manifest,
)
from .trajectory import spot_gestures

FRAME_DT_MS = 10.0
_IDLE_PAD = 3


@dataclass(frozen=True)
class NoiseSpec:
    """Per-point jitter (mm), speed-warp amplitude, start-phase jitter."""

    jitter_mm: float = 2.0
    speed_warp: float = 0.2
    phase_jitter: float = 0.05

    def __post_init__(self):
        if min(self.jitter_mm, self.speed_warp, self.phase_jitter) < 0:
            raise ValueError("noise amplitudes must be nonnegative")
        if self.speed_warp >= 1.0:
            raise ValueError("speed warp must stay below 1 to remain monotone")

    @classmethod
    def none(cls) -> "NoiseSpec":
        return cls(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ShapeSpec:
    """One gesture class: canonical curve plus sampling parameter ranges."""

    label: str
    gesture_type: GestureType
    curve_id: str
    closed: bool
    diameter_frac: float
    size_range: tuple[float, float] = (80.0, 200.0)
    rotation_range: tuple[float, float] = (-0.15, 0.15)
    points_range: tuple[int, int] = (48, 72)
    center_box: tuple[tuple[float, float], ...] | None = None  # ((x), (y), (z))

    def fixed(self, size: float = 150.0, n_points: int = 60) -> "ShapeSpec":
        """Variant with placement randomization disabled."""
        from dataclasses import replace

        return replace(
            self,
            size_range=(size, size),
            rotation_range=(0.0, 0.0),
            points_range=(n_points, n_points),
            center_box=((0.0, 0.0), (190.0, 190.0), (0.0, 0.0)),
        )

    def canonical(self) -> np.ndarray:
        table = (
            curves.SINGLE_FINGER_CURVES
            if self.gesture_type is GestureType.SINGLE_FINGER
            else curves.MULTI_FINGER_CURVES
        )
        return table[self.curve_id][0]()


def _build_library() -> dict[tuple[str, GestureType], ShapeSpec]:
    lib: dict[tuple[str, GestureType], ShapeSpec] = {}
    for label, (fn, closed, dfrac) in curves.SINGLE_FINGER_CURVES.items():
        lib[(label, GestureType.SINGLE_FINGER)] = ShapeSpec(
            label, GestureType.SINGLE_FINGER, label, closed, dfrac
        )
    for label, (fn, closed, dfrac) in curves.MULTI_FINGER_CURVES.items():
        lib[(label, GestureType.MULTI_FINGER)] = ShapeSpec(
            label, GestureType.MULTI_FINGER, label, closed, dfrac
        )
    return lib


SHAPE_LIBRARY = _build_library()


def shape_specs(gesture_type: GestureType | None = None) -> list[ShapeSpec]:
    specs = [
        spec
        for (label, gtype), spec in sorted(
            SHAPE_LIBRARY.items(), key=lambda kv: (kv[0][1].value, kv[0][0])
        )
        if gesture_type is None or gtype is gesture_type
    ]
    return specs


def get_shape_spec(label: str, gesture_type: GestureType) -> ShapeSpec:
    try:
        return SHAPE_LIBRARY[(label, gesture_type)]
    except KeyError:
        raise UnknownLabelError(
            f"no {gesture_type.value}-finger shape named {label!r}"
        ) from None


def _arc_positions(poly: np.ndarray, fractions: np.ndarray) -> np.ndarray:
    """Interpolate along the polyline at the given arc-length fractions."""
    seg = np.linalg.norm(np.diff(poly, axis=0), axis=1)
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    s = fractions * cum[-1]
    return np.column_stack([np.interp(s, cum, poly[:, k]) for k in range(3)])


def _rot_y(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _rot_z(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class GroundTruth:
    """Exact geometry bookkeeping for render-parameter checks."""

    size: float
    height: float
    diameter: float
    length: float
    width: float

    def to_params(self) -> dict[str, float]:
        return {
            "size": self.size,
            "height": self.height,
            "diameter": self.diameter,
            "length": self.length,
            "width": self.width,
        }


# Grip offsets around the virtual palm, in units of (diameter / 2). They sum
# to zero so the fingertip centroid stays on the palm path, and thumb/middle
# sit diametrically opposite.
_GRIP_UNITS = {
    Finger.THUMB: np.array([-1.0, 0.0, 0.0]),
    Finger.INDEX: np.array([0.0, 0.0, 1.0]),
    Finger.MIDDLE: np.array([1.0, 0.0, 0.0]),
    Finger.RING: np.array([0.0, 0.0, -1.0]),
    Finger.PINKY: np.array([0.0, 0.0, 0.0]),
}


def _generate_geometry(
    spec: ShapeSpec, noise: NoiseSpec, rng: np.random.Generator
) -> tuple[np.ndarray, GroundTruth, float]:
    """Palm path (n, 3) in sensor mm, ground truth, grip diameter."""
    poly = spec.canonical()
    n = int(rng.integers(spec.points_range[0], spec.points_range[1] + 1))

    u = np.linspace(0.0, 1.0, n)
    if noise.speed_warp > 0:
        phase = rng.uniform(0.0, curves.TWO_PI)
        u = u + noise.speed_warp / curves.TWO_PI * (
            np.sin(curves.TWO_PI * u + phase) - math.sin(phase)
        )
    if spec.closed and noise.phase_jitter > 0:
        u = np.mod(u + rng.uniform(-noise.phase_jitter, noise.phase_jitter), 1.0)

    sampler = (
        curves.EXACT_SAMPLERS.get(spec.curve_id)
        if spec.gesture_type is GestureType.SINGLE_FINGER
        else None
    )
    path = sampler(u) if sampler else _arc_positions(poly, u)

    extent = float((poly.max(axis=0) - poly.min(axis=0)).max())
    size = float(rng.uniform(*spec.size_range))
    scale = size / extent
    angle = float(rng.uniform(*spec.rotation_range))
    if spec.gesture_type is GestureType.SINGLE_FINGER:
        rot = _rot_z(angle)
        box = spec.center_box or ((-60, 60), (120, 260), (-40, 40))
    else:
        rot = _rot_y(angle)
        box = spec.center_box or ((-50, 50), (140, 240), (-50, 50))
    center = np.array([rng.uniform(lo, hi) for lo, hi in box])
    path = (path - poly.mean(axis=0)) * scale @ rot.T + center

    diameter = spec.diameter_frac * scale * extent
    lo, hi = path.min(axis=0), path.max(axis=0)
    truth = GroundTruth(
        size=size,
        height=float(hi[1] - lo[1]),
        diameter=float(diameter),
        length=float(hi[0] - lo[0]),
        width=float(hi[2] - lo[2]),
    )
    return path, truth, diameter


def generate_recording(
    spec: ShapeSpec, noise: NoiseSpec, seed
) -> tuple[Recording, GroundTruth]:
    """Full recording with idle padding and capture-gate hand states."""
    rng = np.random.default_rng(seed)
    path, truth, diameter = _generate_geometry(spec, noise, rng)
    n = path.shape[0]

    frames: list[Frame] = []
    t = 0.0
    single = spec.gesture_type is GestureType.SINGLE_FINGER
    idle = dict(
        left=LeftHandState.OPEN,
        right=RightHandState.FIST if single else RightHandState.OPEN,
    )
    for _ in range(_IDLE_PAD):
        frames.append(Frame(t, idle["left"], idle["right"], {}))
        t += FRAME_DT_MS

    for i in range(n):
        if single:
            tip = path[i] + rng.normal(0.0, noise.jitter_mm, 3) if noise.jitter_mm else path[i]
            tips = {Finger.INDEX: Point3(tip[0], tip[1], tip[2], t)}
            frames.append(Frame(t, LeftHandState.OPEN, RightHandState.INDEX_ONLY, tips))
        else:
            tips = {}
            for finger, unit in _GRIP_UNITS.items():
                pos = path[i] + unit * (diameter / 2.0)
                if noise.jitter_mm:
                    pos = pos + rng.normal(0.0, noise.jitter_mm, 3)
                tips[finger] = Point3(pos[0], pos[1], pos[2], t)
            frames.append(Frame(t, LeftHandState.FIST, RightHandState.OPEN, tips))
        t += FRAME_DT_MS

    for _ in range(_IDLE_PAD):
        frames.append(Frame(t, idle["left"], idle["right"], {}))
        t += FRAME_DT_MS

    return Recording(tuple(frames), RecordingSource.SYNTHETIC), truth


def generate_sample(
    spec: ShapeSpec, noise: NoiseSpec, seed, user_id: str = ""
) -> GestureSample:
    """Labeled sample produced by spotting a generated recording."""
    recording, _ = generate_recording(spec, noise, seed)
    recording = Recording(recording.frames, recording.source, user_id)
    spotted = spot_gestures(recording)
    assert len(spotted) == 1, "generator must produce exactly one segment"
    sample = spotted[0]
    return GestureSample(
        id=f"{spec.label}-{spec.gesture_type.value}",
        label=spec.label,
        gesture_type=sample.gesture_type,
        trajectory=sample.trajectory,
        user_id=user_id,
        frames=sample.frames,
    )


def generate_dataset(
    specs: list[ShapeSpec],
    per_class: int,
    noise: NoiseSpec,
    seed: int,
    out_dir: str | os.PathLike,
    n_users: int = 5,
) -> Path:
    """Write per-sample recording files plus a manifest; returns manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    entries: list[ManifestEntry] = []
    for class_idx, spec in enumerate(specs):
        for i in range(per_class):
            recording, truth = generate_recording(spec, noise, [seed, class_idx, i])
            name = f"{spec.label}-{spec.gesture_type.value}-{i:03d}.rec"
            save_recording_file(recording, out / name)
            entries.append(
                ManifestEntry(
                    path=name,
                    label=spec.label,
                    user=f"user{(i % n_users) + 1:02d}",
                    gesture_type=spec.gesture_type,
                    params={**truth.to_params(), "seed": seed, "index": i},
                )
            )
    manifest = out / "manifest.jsonl"
    write_manifest(entries, manifest)
    return manifest
