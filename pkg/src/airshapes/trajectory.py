"""Gesture spotting and trajectory preprocessing.

Spotting rules: a multi-finger gesture is a maximal frame run gated by a
closed left fist; a single-finger gesture is a maximal run where the right
hand shows only the index finger. When both gates hold the left-fist switch
wins. Runs shorter than 7 frames are discarded (the feature window needs 7
points).
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, GapError, ValidationError
from .tracking import (
    MIN_GESTURE_FRAMES,
    Finger,
    Frame,
    GestureSample,
    GestureType,
    LeftHandState,
    Recording,
    RightHandState,
    Trajectory,
)

MAX_INTERP_GAP = 3  # frames; longer fingertip dropouts abort the segment


def _runs(mask: list[bool]) -> list[tuple[int, int]]:
    """Maximal [start, end) runs of True."""
    runs = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i))
            start = None
    if start is not None:
        runs.append((start, len(mask)))
    return runs


def _fingertip_series(frames: list[Frame], finger: Finger) -> np.ndarray | None:
    """Per-frame positions of one finger with short gaps interpolated.

    Returns (n, 3) with NaN rows only at untracked leading/trailing edges, or
    None if the finger never appears. Interior gaps longer than
    MAX_INTERP_GAP frames raise GapError.
    """
    n = len(frames)
    pos = np.full((n, 3), np.nan)
    for i, frame in enumerate(frames):
        tip = frame.fingertip(finger)
        if tip is not None:
            pos[i] = (tip.x, tip.y, tip.z)
    present = ~np.isnan(pos[:, 0])
    if not present.any():
        return None
    idx = np.flatnonzero(present)
    first, last = idx[0], idx[-1]
    for a, b in zip(idx[:-1], idx[1:]):
        gap = b - a - 1
        if gap == 0:
            continue
        if gap > MAX_INTERP_GAP:
            raise GapError(
                f"finger {finger.name} lost for {gap} frames "
                f"(> {MAX_INTERP_GAP}); capture is broken"
            )
        w = np.linspace(0.0, 1.0, gap + 2)[1:-1, None]
        pos[a + 1 : b] = (1 - w) * pos[a] + w * pos[b]
    pos[:first] = pos[first]
    pos[last + 1 :] = pos[last]
    return pos


def collapse_multifinger(frames: list[Frame] | tuple[Frame, ...]) -> Trajectory:
    """Reduce a multi-finger frame run to one trajectory.

    Emits the per-frame centroid of all present fingertips; output length
    equals input length. A frame with zero fingertips raises GapError.
    """
    frames = list(frames)
    for i, frame in enumerate(frames):
        if not frame.fingertips:
            raise GapError(f"frame {i} has no fingertips to collapse")
    fingers = sorted({f for fr in frames for f in fr.fingertips})
    series = []
    for finger in fingers:
        s = _fingertip_series(frames, finger)
        if s is not None:
            series.append(s)
    stack = np.stack(series)  # (fingers, n, 3)
    centroid = stack.mean(axis=0)
    times = np.array([f.t for f in frames], dtype=float)
    return Trajectory(centroid, times)


def _single_finger_trajectory(frames: list[Frame]) -> Trajectory | None:
    series = _fingertip_series(frames, Finger.INDEX)
    if series is None:
        return None
    times = np.array([f.t for f in frames], dtype=float)
    return Trajectory(series, times)


def spot_gestures(recording: Recording) -> list[GestureSample]:
    """Segment a recording into unlabeled gesture samples.

    Multi-finger runs (left fist) take precedence over single-finger runs
    (index-only right hand); overlapping frames belong to the multi run.
    """
    frames = list(recording.frames)
    multi_mask = [f.left is LeftHandState.FIST for f in frames]
    single_mask = [
        f.right is RightHandState.INDEX_ONLY and not m
        for f, m in zip(frames, multi_mask)
    ]
    segments: list[tuple[int, int, GestureType]] = []
    for start, end in _runs(multi_mask):
        segments.append((start, end, GestureType.MULTI_FINGER))
    for start, end in _runs(single_mask):
        segments.append((start, end, GestureType.SINGLE_FINGER))
    segments.sort(key=lambda s: s[0])

    samples: list[GestureSample] = []
    seq = 0
    for start, end, gtype in segments:
        run = frames[start:end]
        # Trim capture warm-up/cool-down frames that carry no usable tips.
        if gtype is GestureType.MULTI_FINGER:
            usable = [bool(f.fingertips) for f in run]
        else:
            usable = [f.fingertip(Finger.INDEX) is not None for f in run]
        if not any(usable):
            continue
        lo = usable.index(True)
        hi = len(run) - usable[::-1].index(True)
        run = run[lo:hi]
        if len(run) < MIN_GESTURE_FRAMES:
            continue
        if gtype is GestureType.MULTI_FINGER:
            trajectory = collapse_multifinger(run)
        else:
            trajectory = _single_finger_trajectory(run)
            if trajectory is None:
                continue
        samples.append(
            GestureSample(
                id=f"seg-{seq:03d}",
                label=None,
                gesture_type=gtype,
                trajectory=trajectory,
                user_id=recording.user_id,
                frames=tuple(run),
            )
        )
        seq += 1
    return samples


def classify_gesture_type(sample: GestureSample) -> GestureType:
    """Gesture type as decided by the capture gate that opened the segment."""
    return sample.gesture_type


def resample(trajectory: Trajectory, n: int) -> Trajectory:
    """Resample to n points equally spaced by arc length.

    First and last points are preserved exactly. Timestamps are interpolated
    along the same arc-length parameter.
    """
    if n < MIN_GESTURE_FRAMES:
        raise ValidationError(f"resample target must be >= {MIN_GESTURE_FRAMES}, got {n}")
    xyz = trajectory.xyz
    seg = np.linalg.norm(np.diff(xyz, axis=0), axis=1)
    total = float(seg.sum())
    if total <= 0.0:
        raise DegenerateInputError("cannot resample a trajectory with zero path length")
    s = np.concatenate(([0.0], np.cumsum(seg)))
    targets = np.linspace(0.0, total, n)
    out = np.column_stack([np.interp(targets, s, xyz[:, k]) for k in range(3)])
    times = np.interp(targets, s, trajectory.times)
    out[0], out[-1] = xyz[0], xyz[-1]
    times[0], times[-1] = trajectory.times[0], trajectory.times[-1]
    # Duplicate input points (zero-length segments) can collapse interpolated
    # timestamps; nudge to keep them strictly increasing.
    for i in range(1, n):
        if times[i] <= times[i - 1]:
            times[i] = np.nextafter(times[i - 1], np.inf)
    return Trajectory(out, times)


def normalize(trajectory: Trajectory) -> Trajectory:
    """Center the bounding box at the origin and scale its largest extent to 1.

    Uniform scaling preserves aspect; a zero-extent box is degenerate.
    """
    xyz = trajectory.xyz
    lo = xyz.min(axis=0)
    hi = xyz.max(axis=0)
    extent = float((hi - lo).max())
    if extent <= 0.0:
        raise DegenerateInputError("bounding box has zero extent")
    center = (lo + hi) / 2.0
    return Trajectory((xyz - center) / extent, trajectory.times)


def project_to_plane(trajectory: Trajectory) -> Trajectory:
    """Drop the depth axis: (x, y, z) -> (x, y, 0)."""
    xyz = trajectory.xyz.copy()
    xyz[:, 2] = 0.0
    return Trajectory(xyz, trajectory.times)
