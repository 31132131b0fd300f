"""Per-point trajectory features: classic online-handwriting descriptors
(writing direction, curvature, aspect, curliness, slope, lineness) in their
2D form and extended to 3D, plus a curvature-moments summary baseline.

Index conventions (0-based point index t, trajectory length n):

* direction uses the signed central difference P(t-1) - P(t+1); valid for
  1 <= t <= n-2. The sign convention is deliberate and pinned by tests:
  motion along +x yields cos = -1.
* 2D curvature is the turning angle between the directions at t-1 and t+1;
  valid for 2 <= t <= n-3.
* 3D curvature compares unit chord gradients (P(t+2)-P(t))/|...| and
  (P(t)-P(t-2))/|...|, divided by |P(t+1)-P(t-1)|; valid for 2 <= t <= n-3.
* aspect, curliness, slope, and lineness use the 7-point window t-3 .. t+3;
  valid for 3 <= t <= n-4.

Degenerate geometry (stationary window, zero chord) never aborts extraction:
the affected value takes a documented sentinel and the frame is flagged.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DimensionMismatchError, TrajectoryTooShortError, ValidationError
from .tracking import Trajectory

WINDOW_RADIUS = 3
_EPS = 1e-12


class FeatureDim(Enum):
    F7 = "f7"
    F12 = "f12"
    MOMENTS6 = "moments6"

    @property
    def size(self) -> int:
        return {"f7": 7, "f12": 12, "moments6": 6}[self.value]


@dataclass(frozen=True)
class FeatureVector:
    """One fixed-length feature row."""

    values: np.ndarray
    dim: FeatureDim

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.dim.size,):
            raise DimensionMismatchError(
                f"{self.dim.value} vector must have {self.dim.size} entries, "
                f"got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValidationError("feature vector contains non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


class FeatureSequence:
    """Per-point feature rows for one trajectory (edge rows replicated).

    ``values`` is (n, d) and matches the source trajectory length; ``flagged``
    marks rows where any constituent feature hit a degenerate-geometry
    sentinel.
    """

    __slots__ = ("values", "dim", "sample_id", "flagged")

    def __init__(
        self,
        values: np.ndarray,
        dim: FeatureDim,
        sample_id: str = "",
        flagged: np.ndarray | None = None,
    ):
        values = np.ascontiguousarray(values, dtype=float)
        if values.ndim != 2 or values.shape[1] != dim.size:
            raise DimensionMismatchError(
                f"{dim.value} sequence must be (n, {dim.size}), got {values.shape}"
            )
        if flagged is None:
            flagged = np.zeros(values.shape[0], dtype=bool)
        flagged = np.ascontiguousarray(flagged, dtype=bool)
        if flagged.shape != (values.shape[0],):
            raise DimensionMismatchError("flag array length mismatch")
        values.setflags(write=False)
        flagged.setflags(write=False)
        self.values = values
        self.dim = dim
        self.sample_id = sample_id
        self.flagged = flagged

    def __len__(self) -> int:
        return self.values.shape[0]

    @property
    def frames(self) -> tuple[FeatureVector, ...]:
        return tuple(FeatureVector(row, self.dim) for row in self.values)


@dataclass(frozen=True)
class WindowExtents:
    """Bounding-box extents and path length of a local point window."""

    dx: float
    dy: float
    dz: float
    path_length: float

    def __post_init__(self):
        if min(self.dx, self.dy, self.dz) < 0:
            raise ValidationError("window extents must be nonnegative")
        if self.path_length < max(self.dx, self.dy, self.dz) - 1e-12:
            raise ValidationError("window path length below its own extent")

    @classmethod
    def of(cls, points: np.ndarray) -> "WindowExtents":
        pts = np.asarray(points, dtype=float)
        ext = pts.max(axis=0) - pts.min(axis=0)
        length = float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())
        return cls(float(ext[0]), float(ext[1]), float(ext[2]), length)

    @classmethod
    def around(cls, trajectory: Trajectory, t: int, radius: int = WINDOW_RADIUS) -> "WindowExtents":
        _check_index(trajectory, t, radius)
        return cls.of(trajectory.xyz[t - radius : t + radius + 1])


def _check_index(trajectory: Trajectory, t: int, radius: int) -> None:
    n = len(trajectory)
    if not radius <= t <= n - 1 - radius:
        raise ValidationError(
            f"index {t} outside valid range [{radius}, {n - 1 - radius}] "
            f"for a +/-{radius} window on {n} points"
        )


# --- scalar feature operations -------------------------------------------------


def direction_2d(trajectory: Trajectory, t: int) -> tuple[float, float, bool]:
    """Local writing direction in the plane: (cos, sin, flagged)."""
    _check_index(trajectory, t, 1)
    p = trajectory.xyz
    dx = p[t - 1, 0] - p[t + 1, 0]
    dy = p[t - 1, 1] - p[t + 1, 1]
    ds = float(np.hypot(dx, dy))
    if ds <= _EPS:
        return 0.0, 0.0, True
    return float(dx / ds), float(dy / ds), False


def direction_3d(trajectory: Trajectory, t: int) -> tuple[float, float, float, bool]:
    """Direction cosines against the x, y, z axes: (cosa, cosb, cosg, flagged)."""
    _check_index(trajectory, t, 1)
    d = trajectory.xyz[t - 1] - trajectory.xyz[t + 1]
    ds = float(np.linalg.norm(d))
    if ds <= _EPS:
        return 0.0, 0.0, 0.0, True
    return float(d[0] / ds), float(d[1] / ds), float(d[2] / ds), False


def curvature_2d(trajectory: Trajectory, t: int) -> tuple[float, float, bool]:
    """Turning angle between the directions at t-1 and t+1: (cos, sin, flagged)."""
    _check_index(trajectory, t, 2)
    c0, s0, f0 = direction_2d(trajectory, t - 1)
    c1, s1, f1 = direction_2d(trajectory, t + 1)
    if f0 or f1:
        return 1.0, 0.0, True
    return c0 * c1 + s0 * s1, c0 * s1 - s0 * c1, False


def curvature_3d(trajectory: Trajectory, t: int) -> tuple[float, bool]:
    """Rate of change of the unit chord gradient: (K, flagged), K >= 0."""
    _check_index(trajectory, t, 2)
    p = trajectory.xyz
    fwd = p[t + 2] - p[t]
    bwd = p[t] - p[t - 2]
    nf = float(np.linalg.norm(fwd))
    nb = float(np.linalg.norm(bwd))
    dp = float(np.linalg.norm(p[t + 1] - p[t - 1]))
    if nf <= _EPS or nb <= _EPS or dp <= _EPS:
        return 0.0, True
    return float(np.linalg.norm(fwd / nf - bwd / nb) / dp), False


def aspect_2d(window: WindowExtents) -> tuple[float, bool]:
    """Height-vs-width balance of the window box, in [-1, 1]."""
    denom = window.dx + window.dy
    if denom <= _EPS:
        return 0.0, True
    return (window.dy - window.dx) / denom, False


def aspect_3d(window: WindowExtents) -> tuple[float, float, float, bool]:
    """Pairwise extent balances (y:x, z:y, z:x), each in [-1, 1]."""
    flagged = False
    out = []
    for num, a, b in (
        (window.dy, window.dx, window.dy),
        (window.dz, window.dy, window.dz),
        (window.dz, window.dz, window.dx),
    ):
        denom = a + b
        if denom <= _EPS:
            out.append(0.0)
            flagged = True
        else:
            out.append(2.0 * num / denom - 1.0)
    return out[0], out[1], out[2], flagged


def curliness(window: WindowExtents, dims: int = 3) -> tuple[float, bool]:
    """Window path length over its largest extent, minus 2.

    -1 for an axis-aligned straight window; grows as the path coils.
    """
    if dims == 2:
        extent = max(window.dx, window.dy)
    elif dims == 3:
        extent = max(window.dx, window.dy, window.dz)
    else:
        raise ValidationError(f"dims must be 2 or 3, got {dims}")
    if extent <= _EPS:
        return -1.0, True
    return window.path_length / extent - 2.0, False


def slope_3d(trajectory: Trajectory, t: int) -> tuple[float, float, float, bool]:
    """Unit direction ratios of the window's end-to-end chord (forward sense)."""
    _check_index(trajectory, t, WINDOW_RADIUS)
    a = trajectory.xyz[t + WINDOW_RADIUS] - trajectory.xyz[t - WINDOW_RADIUS]
    s = float(np.linalg.norm(a))
    if s <= _EPS:
        return 0.0, 0.0, 0.0, True
    return float(a[0] / s), float(a[1] / s), float(a[2] / s), False


def lineness(trajectory: Trajectory, t: int) -> tuple[float, bool]:
    """Mean squared distance of interior window points from the window chord."""
    _check_index(trajectory, t, WINDOW_RADIUS)
    p = trajectory.xyz
    a = p[t - WINDOW_RADIUS]
    b = p[t + WINDOW_RADIUS]
    chord = b - a
    norm = float(np.linalg.norm(chord))
    if norm <= _EPS:
        return 0.0, True
    interior = p[t - WINDOW_RADIUS + 1 : t + WINDOW_RADIUS]
    d = np.linalg.norm(np.cross(interior - a, chord), axis=1) / norm
    return float(np.mean(d**2)), False


# --- vectorized sequence extraction ---------------------------------------------


def _direction_rows(p: np.ndarray, planar: bool) -> tuple[np.ndarray, np.ndarray]:
    """Unit central-difference directions for t in 1..n-2."""
    d = p[:-2] - p[2:]
    if planar:
        d = d[:, :2]
    ds = np.linalg.norm(d, axis=1)
    bad = ds <= _EPS
    safe = np.where(bad, 1.0, ds)
    out = d / safe[:, None]
    out[bad] = 0.0
    return out, bad


def _window_stats(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Extents (m, 3) and path length (m,) of each 7-point window."""
    win = np.lib.stride_tricks.sliding_window_view(p, 2 * WINDOW_RADIUS + 1, axis=0)
    ext = win.max(axis=2) - win.min(axis=2)
    seg = np.linalg.norm(np.diff(p, axis=0), axis=1)
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    length = cum[2 * WINDOW_RADIUS :] - cum[: -2 * WINDOW_RADIUS or None]
    return ext, length


def _curvature3d_rows(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """K for t in 2..n-3."""
    chord = p[2:] - p[:-2]  # chord[i] = P[i+2] - P[i]
    nrm = np.linalg.norm(chord, axis=1)
    bad_chord = nrm <= _EPS
    unit = chord / np.where(bad_chord, 1.0, nrm)[:, None]
    fwd = unit[2:]  # at t: chord[t]
    bwd = unit[:-2]  # at t: chord[t-2]
    dp = np.linalg.norm(p[3:-1] - p[1:-3], axis=1)
    bad = bad_chord[2:] | bad_chord[:-2] | (dp <= _EPS)
    k = np.linalg.norm(fwd - bwd, axis=1) / np.where(bad, 1.0, dp)
    k[bad] = 0.0
    return k, bad


def _require_length(p: np.ndarray, minimum: int) -> None:
    if p.shape[0] < minimum:
        raise TrajectoryTooShortError(
            f"need at least {minimum} points, got {p.shape[0]}"
        )


def _pad_rows(rows: np.ndarray, flags: np.ndarray, lead: int, tail: int) -> tuple[np.ndarray, np.ndarray]:
    rows = np.concatenate([np.repeat(rows[:1], lead, axis=0), rows, np.repeat(rows[-1:], tail, axis=0)])
    flags = np.concatenate([np.repeat(flags[:1], lead), flags, np.repeat(flags[-1:], tail)])
    return rows, flags


def extract_f12(trajectory: Trajectory, sample_id: str = "") -> FeatureSequence:
    """12-dimensional rows [cosa, cosb, cosg, K, A1, A2, A3, C, L, l, m, n].

    Full rows exist for t in 3..n-4; edge rows replicate the nearest full row
    so the sequence length equals the trajectory length.
    """
    p = trajectory.xyz
    _require_length(p, 2 * WINDOW_RADIUS + 1)
    n = p.shape[0]
    m = n - 2 * WINDOW_RADIUS  # rows for t = 3 .. n-4

    dirs, dir_bad = _direction_rows(p, planar=False)  # t in 1..n-2
    k, k_bad = _curvature3d_rows(p)  # t in 2..n-3
    ext, length = _window_stats(p)  # t in 3..n-4

    dirs, dir_bad = dirs[2 : 2 + m], dir_bad[2 : 2 + m]
    k, k_bad = k[1 : 1 + m], k_bad[1 : 1 + m]

    dx, dy, dz = ext[:, 0], ext[:, 1], ext[:, 2]
    a1_den, a2_den, a3_den = dx + dy, dy + dz, dz + dx
    asp_bad = (a1_den <= _EPS) | (a2_den <= _EPS) | (a3_den <= _EPS)
    a1 = np.where(a1_den <= _EPS, 0.0, 2.0 * dy / np.where(a1_den <= _EPS, 1.0, a1_den) - 1.0)
    a2 = np.where(a2_den <= _EPS, 0.0, 2.0 * dz / np.where(a2_den <= _EPS, 1.0, a2_den) - 1.0)
    a3 = np.where(a3_den <= _EPS, 0.0, 2.0 * dz / np.where(a3_den <= _EPS, 1.0, a3_den) - 1.0)

    max_ext = ext.max(axis=1)
    curl_bad = max_ext <= _EPS
    curl = np.where(curl_bad, -1.0, length / np.where(curl_bad, 1.0, max_ext) - 2.0)

    chord = p[2 * WINDOW_RADIUS :] - p[: -2 * WINDOW_RADIUS or None]
    chord_norm = np.linalg.norm(chord, axis=1)
    slope_bad = chord_norm <= _EPS
    slope = chord / np.where(slope_bad, 1.0, chord_norm)[:, None]
    slope[slope_bad] = 0.0

    win = np.lib.stride_tricks.sliding_window_view(p, 2 * WINDOW_RADIUS + 1, axis=0)
    win = np.moveaxis(win, 2, 1)  # (m, 7, 3)
    interior = win[:, 1:-1, :] - win[:, :1, :]
    cross = np.cross(interior, chord[:, None, :])
    dist = np.linalg.norm(cross, axis=2) / np.where(slope_bad, 1.0, chord_norm)[:, None]
    line = np.mean(dist**2, axis=1)
    line[slope_bad] = 0.0

    rows = np.column_stack(
        [dirs[:, 0], dirs[:, 1], dirs[:, 2], k, a1, a2, a3, curl, line,
         slope[:, 0], slope[:, 1], slope[:, 2]]
    )
    flags = dir_bad | k_bad | asp_bad | curl_bad | slope_bad
    rows, flags = _pad_rows(rows, flags, WINDOW_RADIUS, WINDOW_RADIUS)
    return FeatureSequence(rows, FeatureDim.F12, sample_id, flags)


def extract_f7(trajectory: Trajectory, sample_id: str = "") -> FeatureSequence:
    """7-dimensional planar rows [cos, sin, cos_curv, sin_curv, A, C, m].

    Requires a plane-projected trajectory (z identically 0). The slope entry
    m is the vertical component of the window-chord direction.
    """
    p = trajectory.xyz
    _require_length(p, 2 * WINDOW_RADIUS + 1)
    if np.any(np.abs(p[:, 2]) > 1e-9):
        raise ValidationError("planar features require z == 0; project first")
    n = p.shape[0]
    m = n - 2 * WINDOW_RADIUS

    dirs, dir_bad = _direction_rows(p, planar=True)  # t in 1..n-2
    # Turning angle from the directions two steps apart: rows for t in 2..n-3.
    c0, s0 = dirs[:-2, 0], dirs[:-2, 1]
    c1, s1 = dirs[2:, 0], dirs[2:, 1]
    curv_bad = dir_bad[:-2] | dir_bad[2:]
    cos_c = np.where(curv_bad, 1.0, c0 * c1 + s0 * s1)
    sin_c = np.where(curv_bad, 0.0, c0 * s1 - s0 * c1)

    ext, length = _window_stats(p)
    dx, dy = ext[:, 0], ext[:, 1]
    a_den = dx + dy
    asp_bad = a_den <= _EPS
    aspect = np.where(asp_bad, 0.0, (dy - dx) / np.where(asp_bad, 1.0, a_den))
    max_ext = np.maximum(dx, dy)
    curl_bad = max_ext <= _EPS
    curl = np.where(curl_bad, -1.0, length / np.where(curl_bad, 1.0, max_ext) - 2.0)

    chord = p[2 * WINDOW_RADIUS :] - p[: -2 * WINDOW_RADIUS or None]
    chord_norm = np.linalg.norm(chord, axis=1)
    slope_bad = chord_norm <= _EPS
    slope_m = np.where(slope_bad, 0.0, chord[:, 1] / np.where(slope_bad, 1.0, chord_norm))

    rows = np.column_stack(
        [dirs[2 : 2 + m, 0], dirs[2 : 2 + m, 1],
         cos_c[1 : 1 + m], sin_c[1 : 1 + m],
         aspect, curl, slope_m]
    )
    flags = (
        dir_bad[2 : 2 + m] | curv_bad[1 : 1 + m] | asp_bad | curl_bad | slope_bad
    )
    rows, flags = _pad_rows(rows, flags, WINDOW_RADIUS, WINDOW_RADIUS)
    return FeatureSequence(rows, FeatureDim.F7, sample_id, flags)


def _curvature_series(p: np.ndarray) -> np.ndarray:
    """Edge-padded 3D curvature series, one K value per input point."""
    k, _ = _curvature3d_rows(p)
    return np.concatenate([np.repeat(k[:1], 2), k, np.repeat(k[-1:], 2)])


def curvature_moments(trajectory: Trajectory, sample_id: str = "") -> FeatureVector:
    """Six-element summary: normalized-time raw moments (orders 0..2) of the
    position-curvature series and of the velocity-curvature series.

    M_j = (1/n) * sum_t K(t) * (t/n)^j with t = 1..n.
    """
    p = trajectory.xyz
    _require_length(p, 9)

    def moments(series: np.ndarray) -> list[float]:
        n = series.shape[0]
        u = np.arange(1, n + 1) / n
        return [float(np.mean(series * u**j)) for j in range(3)]

    pos = _curvature_series(p)
    vel = _curvature_series(np.diff(p, axis=0))
    values = np.array(moments(pos) + moments(vel))
    return FeatureVector(values, FeatureDim.MOMENTS6)


def dump_feature_table(seq: FeatureSequence) -> str:
    """Tab-separated dump (one row per point) for debugging and cross-checks."""
    header = {
        FeatureDim.F7: ["cos_dir", "sin_dir", "cos_curv", "sin_curv", "aspect", "curliness", "slope_m"],
        FeatureDim.F12: ["cos_a", "cos_b", "cos_g", "curvature", "aspect1", "aspect2", "aspect3",
                         "curliness", "lineness", "slope_l", "slope_m", "slope_n"],
        FeatureDim.MOMENTS6: ["pos_m0", "pos_m1", "pos_m2", "vel_m0", "vel_m1", "vel_m2"],
    }[seq.dim]
    lines = ["\t".join(header + ["flagged"])]
    for row, flag in zip(seq.values, seq.flagged):
        lines.append("\t".join(repr(float(v)) for v in row) + f"\t{int(flag)}")
    return "\n".join(lines) + "\n"
