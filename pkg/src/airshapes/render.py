"""Turn a recognized label plus extracted geometry into a render artifact.

Solid (multi-finger) labels emit a watertight triangle mesh as Wavefront OBJ
text; planar (single-finger) symbols emit an SVG vector drawing. Meshes are
built in a canonical frame and then rescaled per axis so the emitted bounding
box equals the requested dimensions exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from . import curves
from .errors import ConfigError, DegenerateInputError, UnknownLabelError
from .tracking import Finger, GestureSample, GestureType

DEFAULT_SIZE_THRESHOLDS = (80.0, 160.0)  # mm, tuned to the sensor field of view


class SizeClass(Enum):
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"


class RenderKind(Enum):
    MESH3D = "mesh"
    VECTOR2D = "vector"


@dataclass(frozen=True)
class RenderParams:
    """Geometry extracted from a gesture, in millimeters."""

    height: float
    diameter: float
    length: float
    width: float
    depth: float
    size_class: SizeClass
    diameter_is_fallback: bool = False

    def __post_init__(self):
        if min(self.height, self.diameter, self.length, self.width, self.depth) < 0:
            raise ConfigError("render dimensions must be nonnegative")

    def to_obj(self) -> dict:
        return {
            "height": self.height,
            "diameter": self.diameter,
            "length": self.length,
            "width": self.width,
            "depth": self.depth,
            "size_class": self.size_class.value,
            "diameter_is_fallback": self.diameter_is_fallback,
        }


def size_class(
    value: float, thresholds: tuple[float, float] = DEFAULT_SIZE_THRESHOLDS
) -> SizeClass:
    """Half-open categories: small < t1 <= medium < t2 <= large."""
    t1, t2 = thresholds
    if not t1 < t2:
        raise ConfigError(f"thresholds must be strictly increasing, got {thresholds}")
    if value < t1:
        return SizeClass.SMALL
    if value >= t2:
        return SizeClass.LARGE
    return SizeClass.MEDIUM


def extract_params(
    sample: GestureSample,
    label: str | None = None,
    thresholds: tuple[float, float] = DEFAULT_SIZE_THRESHOLDS,
) -> RenderParams:
    """Height from the vertical (y) span; diameter from the average
    thumb-to-middle fingertip distance when raw multi-finger frames carry
    both, else the bounding-box width as a flagged fallback."""
    xyz = sample.trajectory.xyz
    lo, hi = xyz.min(axis=0), xyz.max(axis=0)
    ext = hi - lo
    if float(ext.max()) <= 0.0:
        raise DegenerateInputError("trajectory bounding box has zero extent")

    diameter = None
    if sample.gesture_type is GestureType.MULTI_FINGER and sample.frames:
        gaps = []
        for frame in sample.frames:
            thumb = frame.fingertip(Finger.THUMB)
            middle = frame.fingertip(Finger.MIDDLE)
            if thumb is not None and middle is not None:
                gaps.append(
                    math.dist((thumb.x, thumb.y, thumb.z), (middle.x, middle.y, middle.z))
                )
        if gaps:
            diameter = float(np.mean(gaps))
    fallback = diameter is None
    if fallback:
        diameter = float(ext[0])

    return RenderParams(
        height=float(ext[1]),
        diameter=diameter,
        length=float(ext[0]),
        width=float(ext[2]),
        depth=float(ext[1]),
        size_class=size_class(float(ext.max()), thresholds),
        diameter_is_fallback=fallback,
    )


# --- mesh construction -------------------------------------------------------------


def _lathe(profile: list[tuple[float, float]], nseg: int = 32):
    """Surface of revolution around the y axis.

    Profile is a top-to-bottom or bottom-to-top list of (radius, y). Zero
    radius at an end makes a pole; positive radius at an end grows a cap disk.
    """
    verts: list[tuple[float, float, float]] = []
    faces: list[tuple[int, int, int]] = []
    ring_ids: list[int | None] = []  # index of first vertex of each ring, None for pole
    pole_ids: dict[int, int] = {}

    angles = [2 * math.pi * k / nseg for k in range(nseg)]
    for row, (r, y) in enumerate(profile):
        if r < 1e-9:
            pole_ids[row] = len(verts)
            verts.append((0.0, y, 0.0))
            ring_ids.append(None)
        else:
            ring_ids.append(len(verts))
            for a in angles:
                verts.append((r * math.cos(a), y, r * math.sin(a)))

    def ring(row: int, k: int) -> int:
        return ring_ids[row] + (k % nseg)

    for row in range(len(profile) - 1):
        a_pole = ring_ids[row] is None
        b_pole = ring_ids[row + 1] is None
        for k in range(nseg):
            if a_pole and not b_pole:
                faces.append((pole_ids[row], ring(row + 1, k + 1), ring(row + 1, k)))
            elif b_pole and not a_pole:
                faces.append((ring(row, k), ring(row, k + 1), pole_ids[row + 1]))
            elif not a_pole and not b_pole:
                faces.append((ring(row, k), ring(row, k + 1), ring(row + 1, k)))
                faces.append((ring(row, k + 1), ring(row + 1, k + 1), ring(row + 1, k)))

    # Cap open ends that are not poles.
    for row, reverse in ((0, True), (len(profile) - 1, False)):
        if ring_ids[row] is None:
            continue
        center = len(verts)
        verts.append((0.0, profile[row][1], 0.0))
        for k in range(nseg):
            tri = (ring(row, k), ring(row, k + 1), center)
            faces.append(tri[::-1] if reverse else tri)
    return np.array(verts, dtype=float), faces


def _half_circle_profile(n: int = 12) -> list[tuple[float, float]]:
    return [
        (0.5 * math.sin(math.pi * k / n), -0.5 * math.cos(math.pi * k / n))
        for k in range(n + 1)
    ]


def _mesh_box():
    v = np.array(
        [
            [-0.5, -0.5, -0.5], [0.5, -0.5, -0.5], [0.5, 0.5, -0.5], [-0.5, 0.5, -0.5],
            [-0.5, -0.5, 0.5], [0.5, -0.5, 0.5], [0.5, 0.5, 0.5], [-0.5, 0.5, 0.5],
        ]
    )
    f = [
        (0, 2, 1), (0, 3, 2), (4, 5, 6), (4, 6, 7),
        (0, 1, 5), (0, 5, 4), (1, 2, 6), (1, 6, 5),
        (2, 3, 7), (2, 7, 6), (3, 0, 4), (3, 4, 7),
    ]
    return v, f


def _mesh_sq_pyramid():
    v = np.array(
        [
            [-0.5, -0.5, -0.5], [0.5, -0.5, -0.5], [0.5, -0.5, 0.5], [-0.5, -0.5, 0.5],
            [0.0, 0.5, 0.0],
        ]
    )
    f = [(0, 1, 2), (0, 2, 3), (0, 4, 1), (1, 4, 2), (2, 4, 3), (3, 4, 0)]
    return v, f


def _mesh_tetra():
    v = np.array(
        [
            [math.cos(math.pi / 2 + k * 2 * math.pi / 3) * 0.5, -0.5,
             math.sin(math.pi / 2 + k * 2 * math.pi / 3) * 0.5]
            for k in range(3)
        ]
        + [[0.0, 0.5, 0.0]]
    )
    f = [(0, 1, 2), (0, 3, 1), (1, 3, 2), (2, 3, 0)]
    return v, f


def _simplify_outline(poly: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Drop duplicate and collinear vertices from a closed 2D outline."""
    pts = [p for p in poly]
    if np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    out = []
    m = len(pts)
    for i in range(m):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % m]
        area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(area) > tol and np.linalg.norm(b - a) > tol:
            out.append(b)
    return np.array(out)


def _ear_clip(poly: np.ndarray) -> list[tuple[int, int, int]]:
    """Triangulate a simple polygon (CCW) by ear clipping."""
    m = len(poly)
    area2 = sum(
        poly[i][0] * poly[(i + 1) % m][1] - poly[(i + 1) % m][0] * poly[i][1]
        for i in range(m)
    )
    order = list(range(m)) if area2 > 0 else list(range(m))[::-1]

    def is_inside(p, a, b, c) -> bool:
        d1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        d2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
        d3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
        return d1 >= -1e-12 and d2 >= -1e-12 and d3 >= -1e-12

    tris = []
    idx = order[:]
    stuck = 0
    while len(idx) > 3 and stuck <= len(idx):
        clipped = False
        for pos in range(len(idx)):
            i0 = idx[pos - 1]
            i1 = idx[pos]
            i2 = idx[(pos + 1) % len(idx)]
            a, b, c = poly[i0], poly[i1], poly[i2]
            turn = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if turn <= 1e-12:
                continue
            if any(
                is_inside(poly[j], a, b, c)
                for j in idx
                if j not in (i0, i1, i2)
            ):
                continue
            tris.append((i0, i1, i2))
            del idx[pos]
            clipped = True
            break
        stuck = 0 if clipped else stuck + 1
        if not clipped:
            raise ConfigError("outline triangulation failed; polygon not simple?")
    tris.append((idx[0], idx[1], idx[2]))
    return tris


def _mesh_extrude(outline: np.ndarray, depth: float = 1.0):
    """Prism with the given simple 2D cross-section and ear-clipped caps."""
    outline = _simplify_outline(outline)
    m = len(outline)
    front = np.column_stack([outline, np.full(m, depth / 2)])
    back = np.column_stack([outline, np.full(m, -depth / 2)])
    verts = np.vstack([front, back])
    tris = _ear_clip(outline)
    faces = [tuple(t) for t in tris]
    faces += [(a + m, c + m, b + m) for a, b, c in tris]
    for i in range(m):
        j = (i + 1) % m
        faces.append((i, j, m + j))
        faces.append((i, m + j, m + i))
    return verts, faces


def _mesh_tube(path: np.ndarray, radius: float, nseg: int = 12):
    """Closed tube swept along a 3D path using parallel-transport frames."""
    tangents = np.gradient(path, axis=0)
    tangents /= np.linalg.norm(tangents, axis=1)[:, None]
    normal = np.array([0.0, 1.0, 0.0])
    if abs(np.dot(normal, tangents[0])) > 0.9:
        normal = np.array([1.0, 0.0, 0.0])
    frames = []
    n = normal - np.dot(normal, tangents[0]) * tangents[0]
    n /= np.linalg.norm(n)
    for t in tangents:
        n = n - np.dot(n, t) * t
        n /= np.linalg.norm(n)
        frames.append((n.copy(), np.cross(t, n)))

    verts = []
    for p, (n, b) in zip(path, frames):
        for k in range(nseg):
            a = 2 * math.pi * k / nseg
            verts.append(p + radius * (math.cos(a) * n + math.sin(a) * b))
    faces = []
    rows = len(path)
    for r in range(rows - 1):
        for k in range(nseg):
            a = r * nseg + k
            b2 = r * nseg + (k + 1) % nseg
            c = (r + 1) * nseg + (k + 1) % nseg
            d = (r + 1) * nseg + k
            faces.append((a, b2, c))
            faces.append((a, c, d))
    start_center = len(verts)
    verts.append(path[0])
    end_center = len(verts)
    verts.append(path[-1])
    for k in range(nseg):
        faces.append((start_center, (k + 1) % nseg, k))
        base = (rows - 1) * nseg
        faces.append((end_center, base + k, base + (k + 1) % nseg))
    return np.array(verts, dtype=float), faces


def _heart_outline() -> np.ndarray:
    return curves.heart()[::4, :2]


def _house_outline() -> np.ndarray:
    return np.array(
        [(-0.4, -0.5), (0.4, -0.5), (0.4, 0.1), (0.0, 0.5), (-0.4, 0.1)]
    )


def _tree_outline() -> np.ndarray:
    return np.array(
        [
            (-0.06, -0.5), (0.06, -0.5), (0.06, -0.3), (0.35, -0.3), (0.12, 0.0),
            (0.28, 0.0), (0.08, 0.25), (0.2, 0.25), (0.0, 0.5), (-0.2, 0.25),
            (-0.08, 0.25), (-0.28, 0.0), (-0.12, 0.0), (-0.35, -0.3), (-0.06, -0.3),
        ]
    )


def _cloud_outline() -> np.ndarray:
    th = np.linspace(0.0, 2 * math.pi, 64, endpoint=False)
    r = 0.38 + 0.1 * np.cos(3 * th) + 0.04 * np.sin(5 * th)
    return np.column_stack([r * np.cos(th), 0.55 * r * np.sin(th)])


def _helix_path() -> np.ndarray:
    th = np.linspace(0.0, 3 * 2 * math.pi, 96)
    frac = th / th[-1]
    return np.column_stack([0.42 * np.cos(th), -0.42 + 0.84 * frac, 0.42 * np.sin(th)])


def _balloon_profile() -> list[tuple[float, float]]:
    rows = [(0.0, -0.5)]
    for k in range(1, 12):
        a = math.pi * k / 12
        rows.append((0.5 * math.sin(a) * (0.75 + 0.25 * math.cos(a / 2)), -0.5 * math.cos(a)))
    rows.append((0.0, 0.5))
    return rows


_MESH_BUILDERS = {
    "sphere": lambda: _lathe(_half_circle_profile(), 32),
    "cylinder": lambda: _lathe([(0.5, -0.5), (0.5, 0.5)], 32),
    "pipe": lambda: _lathe([(0.5, -0.5), (0.5, 0.5)], 24),
    "cone": lambda: _lathe([(0.5, -0.5), (0.0, 0.5)], 32),
    "hemisphere": lambda: _lathe(
        [(0.5 * math.cos(math.pi / 2 * k / 8), 0.5 * math.sin(math.pi / 2 * k / 8))
         for k in range(9)],
        32,
    ),
    "bottle": lambda: _lathe(
        [(0.3, -0.5), (0.3, 0.05), (0.12, 0.22), (0.12, 0.5)], 24
    ),
    "balloon": lambda: _lathe(_balloon_profile(), 24),
    "cube": _mesh_box,
    "sq_pyramid": _mesh_sq_pyramid,
    "pyramid": _mesh_tetra,
    "heart": lambda: _mesh_extrude(_heart_outline(), 0.35),
    "house": lambda: _mesh_extrude(_house_outline(), 0.8),
    "tree": lambda: _mesh_extrude(_tree_outline(), 0.25),
    "cloud": lambda: _mesh_extrude(_cloud_outline(), 0.45),
    "spiral": lambda: _mesh_tube(_helix_path(), 0.08, 10),
}


@dataclass(frozen=True)
class RenderSpec:
    """What to render: label, extracted parameters, artifact kind."""

    label: str
    params: RenderParams
    kind: RenderKind

    def __post_init__(self):
        allowed = allowed_kinds(self.label)
        if self.kind not in allowed:
            raise ConfigError(
                f"label {self.label!r} cannot render as {self.kind.value}; "
                f"allowed: {sorted(k.value for k in allowed)}"
            )


def allowed_kinds(label: str) -> set[RenderKind]:
    kinds = set()
    if label in curves.SINGLE_FINGER_CURVES:
        kinds.add(RenderKind.VECTOR2D)
    if label in _MESH_BUILDERS:
        kinds.add(RenderKind.MESH3D)
    if not kinds:
        raise UnknownLabelError(f"label {label!r} not in the shape dictionary")
    return kinds


def default_kind(label: str, gesture_type: GestureType) -> RenderKind:
    kinds = allowed_kinds(label)
    preferred = (
        RenderKind.VECTOR2D if gesture_type is GestureType.SINGLE_FINGER else RenderKind.MESH3D
    )
    return preferred if preferred in kinds else next(iter(kinds))


def _target_dims(label: str, params: RenderParams) -> tuple[float, float, float]:
    if label == "sphere":
        d = params.diameter
        return (d, d, d)
    diameter_driven = {"cylinder", "cone", "pipe", "hemisphere", "balloon", "bottle", "spiral"}
    if label in diameter_driven:
        return (params.diameter, params.height, params.diameter)
    return (params.length, params.height, params.width)


def _obj_text(verts: np.ndarray, faces, header: str) -> str:
    lines = [f"# {header}"]
    for v in verts:
        lines.append(f"v {float(v[0])!r} {float(v[1])!r} {float(v[2])!r}")
    for f in faces:
        lines.append(f"f {int(f[0]) + 1} {int(f[1]) + 1} {int(f[2]) + 1}")
    return "\n".join(lines) + "\n"


def build_mesh(label: str, params: RenderParams) -> tuple[np.ndarray, list]:
    """Canonical mesh rescaled so its bounding box equals the target dims."""
    try:
        builder = _MESH_BUILDERS[label]
    except KeyError:
        raise UnknownLabelError(f"no mesh construction for label {label!r}") from None
    verts, faces = builder()
    verts = np.asarray(verts, dtype=float)
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    span = hi - lo
    target = np.array(_target_dims(label, params))
    scale = np.where(span > 0, target / np.where(span > 0, span, 1.0), 1.0)
    verts = (verts - (lo + hi) / 2.0) * scale
    return verts, faces


def _svg_text(label: str, params: RenderParams) -> str:
    table = curves.SINGLE_FINGER_CURVES
    if label not in table:
        raise UnknownLabelError(f"no vector outline for label {label!r}")
    pts = table[label][0]()[:, :2].copy()
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    w = params.length if params.length > 0 else 100.0
    h = params.height if params.height > 0 else 100.0
    pts = (pts - lo) / span * np.array([w, h])
    pts[:, 1] = h - pts[:, 1]  # svg y grows downward
    path = "M " + " L ".join(f"{x:.4f} {y:.4f}" for x, y in pts)
    stroke = max(w, h) * 0.02
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w!r} {h!r}" '
        f'width="{w!r}mm" height="{h!r}mm">\n'
        f'  <title>{label}</title>\n'
        f'  <path d="{path}" fill="none" stroke="black" stroke-width="{stroke:.4f}"/>\n'
        "</svg>\n"
    )


def render(spec: RenderSpec) -> bytes:
    """Emit the artifact bytes for a render spec."""
    if spec.kind is RenderKind.MESH3D:
        verts, faces = build_mesh(spec.label, spec.params)
        header = f"airshapes mesh label={spec.label} " + json.dumps(
            spec.params.to_obj(), sort_keys=True
        )
        return _obj_text(verts, faces, header).encode("utf-8")
    return _svg_text(spec.label, spec.params).encode("utf-8")


def artifact_filename(sample_id: str, label: str, kind: RenderKind) -> str:
    ext = "mesh" if kind is RenderKind.MESH3D else "vec"
    return f"{sample_id}.{label}.{ext}"


def write_artifact(
    out_dir: str | Path, sample_id: str, spec: RenderSpec, provenance: dict | None = None
) -> Path:
    """Write the artifact plus a sidecar parameters file; returns artifact path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / artifact_filename(sample_id, spec.label, spec.kind)
    path.write_bytes(render(spec))
    sidecar = {
        "label": spec.label,
        "kind": spec.kind.value,
        "params": spec.params.to_obj(),
    }
    if provenance:
        sidecar["provenance"] = provenance
    (out / f"{sample_id}.{spec.label}.params.json").write_text(
        json.dumps(sidecar, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return path
