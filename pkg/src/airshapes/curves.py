"""Canonical gesture paths for the 36-shape dictionary.

Every builder returns a dense (N, 3) polyline in a canonical frame: roughly
centered on the origin with extents near 1, y as the vertical axis, z = 0 for
planar (single-finger) symbols. These paths drive both the synthetic data
generator and the 2D vector renderer.
"""

from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi


def _densify(points: np.ndarray, per_unit: int = 80) -> np.ndarray:
    """Insert intermediate samples along straight segments."""
    out = [points[0]]
    for a, b in zip(points[:-1], points[1:]):
        length = float(np.linalg.norm(b - a))
        n = max(1, int(math.ceil(length * per_unit)))
        for k in range(1, n + 1):
            out.append(a + (b - a) * (k / n))
    return np.array(out)


def _poly(*pts: tuple) -> np.ndarray:
    arr = np.array([(p + (0.0,))[:3] for p in pts], dtype=float)
    return _densify(arr)


def _arc2d(cx, cy, r, a0, a1, n=96) -> np.ndarray:
    th = np.linspace(a0, a1, n)
    return np.column_stack([cx + r * np.cos(th), cy + r * np.sin(th), np.zeros(n)])


def _ring_xz(r, y, n=96, a0=0.0, a1=TWO_PI) -> np.ndarray:
    th = np.linspace(a0, a1, n)
    return np.column_stack([r * np.cos(th), np.full(n, y), r * np.sin(th)])


def _join(*parts: np.ndarray) -> np.ndarray:
    """Concatenate polylines, dropping duplicated joints."""
    out = [parts[0]]
    for part in parts[1:]:
        if np.allclose(out[-1][-1], part[0]):
            part = part[1:]
        out.append(part)
    return np.concatenate(out)


# --- single-finger (planar, z = 0) ----------------------------------------------


def circle() -> np.ndarray:
    return _arc2d(0, 0, 0.5, 0.5 * math.pi, 2.5 * math.pi, 128)


def rectangle() -> np.ndarray:
    return _poly((-0.5, -0.35), (0.5, -0.35), (0.5, 0.35), (-0.5, 0.35), (-0.5, -0.35))


def triangle() -> np.ndarray:
    return _poly((-0.5, -0.4), (0.5, -0.4), (0.0, 0.5), (-0.5, -0.4))


def diamond() -> np.ndarray:
    return _poly((0.0, 0.5), (0.35, 0.0), (0.0, -0.5), (-0.35, 0.0), (0.0, 0.5))


def pentagon() -> np.ndarray:
    th = np.pi / 2 + np.linspace(0.0, TWO_PI, 6)
    pts = [(0.5 * math.cos(a), 0.5 * math.sin(a)) for a in th]
    return _poly(*pts)


def star() -> np.ndarray:
    pts = []
    for k in range(6):
        ao = math.pi / 2 + k * 2 * TWO_PI / 5  # connect every second vertex
        pts.append((0.5 * math.cos(ao), 0.5 * math.sin(ao)))
    return _poly(*pts)


def plus() -> np.ndarray:
    return _poly((-0.5, 0.0), (0.5, 0.0), (0.0, 0.0), (0.0, 0.5), (0.0, -0.5))


def cross() -> np.ndarray:
    return _poly((-0.4, 0.5), (0.4, -0.5), (0.4, 0.5), (-0.4, -0.5))


def _arrow(dx: float, dy: float) -> np.ndarray:
    """Arrow pointing along (dx, dy): shaft then head flicks."""
    shaft = np.array([dx, dy, 0.0])
    side = np.array([-dy, dx, 0.0])
    tip = 0.5 * shaft
    tail = -0.5 * shaft
    pts = [tail, tip, tip - 0.3 * shaft + 0.25 * side, tip, tip - 0.3 * shaft - 0.25 * side]
    return _densify(np.array(pts))


def arrow_up() -> np.ndarray:
    return _arrow(0.0, 1.0)


def arrow_down() -> np.ndarray:
    return _arrow(0.0, -1.0)


def arrow_left() -> np.ndarray:
    return _arrow(-1.0, 0.0)


def arrow_right() -> np.ndarray:
    return _arrow(1.0, 0.0)


def heart() -> np.ndarray:
    t = np.linspace(0.0, TWO_PI, 160)
    x = 16 * np.sin(t) ** 3
    y = 13 * np.cos(t) - 5 * np.cos(2 * t) - 2 * np.cos(3 * t) - np.cos(4 * t)
    pts = np.column_stack([x, y, np.zeros_like(t)])
    return pts / 34.0  # fit to unit-ish box


def flower() -> np.ndarray:
    th = np.linspace(0.0, TWO_PI, 256)
    r = 0.5 * np.cos(2 * th)
    return np.column_stack([r * np.cos(th), r * np.sin(th), np.zeros_like(th)])


def moon() -> np.ndarray:
    ra, rb, cx = 0.5, 0.42, 0.2
    a = (ra**2 - rb**2 + cx**2) / (2 * cx)
    h = math.sqrt(ra**2 - a**2)
    ang_a = math.atan2(h, a)
    ang_b = math.atan2(h, a - cx)
    outer = _arc2d(0, 0, ra, ang_a, TWO_PI - ang_a, 96)
    inner = np.column_stack(
        [
            cx + rb * np.cos(np.linspace(-ang_b, ang_b, 64)),
            rb * np.sin(np.linspace(-ang_b, ang_b, 64)),
            np.zeros(64),
        ]
    )
    return _join(outer, inner)


def omega() -> np.ndarray:
    gap = math.radians(55)
    body = _arc2d(0, 0.08, 0.38, -math.pi / 2 - gap + TWO_PI, -math.pi / 2 + gap, 128)
    left_foot = _poly((-0.45, -0.5), (-0.16, -0.5), (body[0, 0], body[0, 1]))
    right_foot = _poly((body[-1, 0], body[-1, 1]), (0.16, -0.5), (0.45, -0.5))
    return _join(left_foot, body, right_foot)


def at_sign() -> np.ndarray:
    th = np.linspace(0.0, 2.6 * math.pi, 200)
    r = 0.12 + 0.38 * th / (2.6 * math.pi)
    return np.column_stack([r * np.cos(th), r * np.sin(th), np.zeros_like(th)])


def bag() -> np.ndarray:
    return _join(
        _poly((-0.4, 0.2), (-0.4, -0.5), (0.4, -0.5), (0.4, 0.2), (0.18, 0.2)),
        _arc2d(0, 0.2, 0.18, 0.0, math.pi, 48),
        _poly((-0.18, 0.2), (-0.4, 0.2)),
    )


def house2d() -> np.ndarray:
    return _poly(
        (-0.4, -0.5), (0.4, -0.5), (0.4, 0.1), (0.0, 0.5), (-0.4, 0.1), (-0.4, -0.5)
    )


def pyramid2d() -> np.ndarray:
    """Front triangle, then the top-view rectangle drawn in continuation."""
    return _poly(
        (-0.4, 0.0), (0.4, 0.0), (0.0, 0.5), (-0.4, 0.0),
        (-0.4, -0.45), (0.4, -0.45), (0.4, 0.0),
    )


def leaf() -> np.ndarray:
    c = 0.32
    tip = 0.45
    r = math.hypot(c, tip)
    ang = math.atan2(tip, c)
    right = _arc2d(-c, 0.0, r, -ang, ang, 64)  # bulges right, lower tip to upper
    left = _arc2d(c, 0.0, r, math.pi - ang, math.pi + ang, 64)  # back down the left
    return _join(right, left)


# --- multi-finger (3D, y up) -----------------------------------------------------


def cylinder3d() -> np.ndarray:
    return _join(_ring_xz(0.5, -0.5, 96), _densify(np.array([[0.5, -0.5, 0.0], [0.5, 0.5, 0.0]])))


def pipe3d() -> np.ndarray:
    return _join(_ring_xz(0.18, -0.5, 72), _densify(np.array([[0.18, -0.5, 0.0], [0.18, 0.5, 0.0]])))


def cone3d() -> np.ndarray:
    th = np.linspace(0.0, 2 * TWO_PI, 192)
    frac = th / (2 * TWO_PI)
    r = 0.04 + 0.46 * frac
    return np.column_stack([r * np.cos(th), 0.5 - frac, r * np.sin(th)])


def sphere3d() -> np.ndarray:
    th = np.linspace(0.5 * math.pi, 2.5 * math.pi, 128)
    vertical = np.column_stack([0.5 * np.cos(th), 0.5 * np.sin(th), np.zeros_like(th)])
    equator = _ring_xz(0.5, 0.0, 64, a0=0.0, a1=math.pi)
    return _join(vertical, equator)


def hemisphere3d() -> np.ndarray:
    dome = np.column_stack(
        [
            0.5 * np.cos(np.linspace(math.pi, 0.0, 64)),
            0.5 * np.sin(np.linspace(math.pi, 0.0, 64)),
            np.zeros(64),
        ]
    )
    return _join(dome, _ring_xz(0.5, 0.0, 96))


def cube3d() -> np.ndarray:
    s = 0.5
    front = _poly((-s, -s, s), (s, -s, s), (s, s, s), (-s, s, s), (-s, -s, s), (-s, s, s))
    top = _poly((-s, s, s), (-s, s, -s), (s, s, -s), (s, s, s))
    right = _poly((s, s, s), (s, -s, s), (s, -s, -s), (s, s, -s))
    return _join(front, top, right)


def sq_pyramid3d() -> np.ndarray:
    s = 0.5
    base = _poly((-s, -0.5, -s), (s, -0.5, -s), (s, -0.5, s), (-s, -0.5, s), (-s, -0.5, -s))
    edges = _poly((-s, -0.5, -s), (0.0, 0.5, 0.0), (s, -0.5, s))
    return _join(base, edges)


def pyramid3d() -> np.ndarray:
    pts = [
        (0.5 * math.cos(a), -0.5, 0.5 * math.sin(a))
        for a in (math.pi / 2 + k * TWO_PI / 3 for k in range(4))
    ]
    base = _poly(*pts)
    edges = _poly(pts[0], (0.0, 0.5, 0.0), pts[1])
    return _join(base, edges)


def spiral3d() -> np.ndarray:
    th = np.linspace(0.0, 3 * TWO_PI, 256)
    frac = th / (3 * TWO_PI)
    return np.column_stack([0.5 * np.cos(th), -0.5 + frac, 0.5 * np.sin(th)])


def heart3d() -> np.ndarray:
    return heart()


def house3d() -> np.ndarray:
    front = _poly(
        (-0.4, -0.5, 0.3), (0.4, -0.5, 0.3), (0.4, 0.1, 0.3), (0.0, 0.5, 0.3),
        (-0.4, 0.1, 0.3), (-0.4, -0.5, 0.3), (-0.4, 0.1, 0.3), (0.0, 0.5, 0.3),
    )
    depth = _poly((0.0, 0.5, 0.3), (0.0, 0.5, -0.3), (-0.4, 0.1, -0.3), (-0.4, -0.5, -0.3))
    return _join(front, depth)


def tree3d() -> np.ndarray:
    outline = _poly(
        (0.0, -0.5), (0.0, -0.3), (-0.35, -0.3), (-0.12, 0.0), (-0.28, 0.0),
        (-0.08, 0.25), (-0.2, 0.25), (0.0, 0.5), (0.2, 0.25), (0.08, 0.25),
        (0.28, 0.0), (0.12, 0.0), (0.35, -0.3), (0.0, -0.3),
    )
    return outline


def cloud3d() -> np.ndarray:
    th = np.linspace(0.0, TWO_PI, 256)
    r = 0.38 + 0.1 * np.cos(3 * th) + 0.04 * np.sin(5 * th)
    return np.column_stack([r * np.cos(th), 0.55 * r * np.sin(th), 0.1 * np.sin(2 * th)])


def bottle3d() -> np.ndarray:
    body = _ring_xz(0.3, -0.5, 80)
    side = _poly((0.3, -0.5, 0.0), (0.3, 0.05, 0.0), (0.12, 0.22, 0.0))
    neck = _ring_xz(0.12, 0.22, 48)
    top = _poly((0.12, 0.22, 0.0), (0.12, 0.5, 0.0))
    return _join(body, side, neck, top)


def balloon3d() -> np.ndarray:
    th = np.linspace(-0.5 * math.pi, 1.5 * math.pi, 128)
    body = np.column_stack([0.32 * np.cos(th), 0.18 + 0.32 * np.sin(th), np.zeros_like(th)])
    ty = np.linspace(-0.14, -0.5, 32)
    string = np.column_stack([0.05 * np.sin(12 * (ty + 0.14)), ty, np.zeros_like(ty)])
    return _join(body, string)


def circle_exact(fractions: np.ndarray) -> np.ndarray:
    """Closed-form arc-length sampling of the canonical circle."""
    th = 0.5 * math.pi + TWO_PI * np.asarray(fractions, dtype=float)
    return np.column_stack([0.5 * np.cos(th), 0.5 * np.sin(th), np.zeros_like(th)])


# Curves with a closed-form arc-length parameterization sample exactly on the
# ideal shape instead of interpolating the dense polyline.
EXACT_SAMPLERS = {"circle": circle_exact}


# Registry: label -> (builder, closed-loop?, canonical diameter fraction).
# The diameter fraction is the object's cross-section extent relative to the
# curve's own largest extent; it scales the five-finger grip spread and the
# recorded ground-truth diameter.
SINGLE_FINGER_CURVES: dict[str, tuple] = {
    "bag": (bag, True, 0.8),
    "circle": (circle, True, 1.0),
    "cross": (cross, False, 0.8),
    "diamond": (diamond, True, 0.7),
    "flower": (flower, True, 1.0),
    "heart": (heart, True, 0.94),
    "up": (arrow_up, False, 0.5),
    "down": (arrow_down, False, 0.5),
    "right": (arrow_right, False, 1.0),
    "left": (arrow_left, False, 1.0),
    "pyramid": (pyramid2d, False, 0.84),
    "house": (house2d, True, 0.8),
    "pentagon": (pentagon, True, 0.95),
    "moon": (moon, True, 1.0),
    "omega": (omega, False, 0.9),
    "triangle": (triangle, True, 1.0),
    "star": (star, True, 1.0),
    "plus": (plus, False, 1.0),
    "rectangle": (rectangle, True, 1.0),
    "at": (at_sign, False, 1.0),
    "leaf": (leaf, True, 0.6),
}

MULTI_FINGER_CURVES: dict[str, tuple] = {
    "cone": (cone3d, False, 1.0),
    "balloon": (balloon3d, False, 0.64),
    "cloud": (cloud3d, True, 1.0),
    "bottle": (bottle3d, False, 0.6),
    "hemisphere": (hemisphere3d, False, 1.0),
    "heart": (heart3d, True, 0.94),
    "house": (house3d, False, 0.8),
    "sq_pyramid": (sq_pyramid3d, False, 1.0),
    "spiral": (spiral3d, False, 1.0),
    "pipe": (pipe3d, False, 0.36),
    "pyramid": (pyramid3d, False, 1.0),
    "tree": (tree3d, True, 0.7),
    "cube": (cube3d, False, 1.0),
    "sphere": (sphere3d, False, 1.0),
    "cylinder": (cylinder3d, False, 1.0),
}
