import numpy as np
import pytest

from airshapes.tracking import Trajectory


def make_trajectory(xyz: np.ndarray, dt: float = 10.0) -> Trajectory:
    xyz = np.asarray(xyz, dtype=float)
    return Trajectory(xyz, np.arange(xyz.shape[0], dtype=float) * dt)


def straight_line(n: int = 20, direction=(1.0, 0.0, 0.0), step: float = 1.0) -> Trajectory:
    d = np.asarray(direction, dtype=float)
    return make_trajectory(np.outer(np.arange(n) * step, d))


def circle_trajectory(n: int = 64, r: float = 1.0, plane: str = "xy") -> Trajectory:
    th = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    zeros = np.zeros(n)
    if plane == "xy":
        xyz = np.column_stack([r * np.cos(th), r * np.sin(th), zeros])
    else:
        xyz = np.column_stack([r * np.cos(th), zeros, r * np.sin(th)])
    return make_trajectory(xyz)


def helix_trajectory(n: int = 128, r: float = 1.0, pitch: float = 0.5) -> Trajectory:
    th = np.linspace(0.0, 4 * np.pi, n)
    xyz = np.column_stack([r * np.cos(th), pitch * th / (2 * np.pi), r * np.sin(th)])
    return make_trajectory(xyz)


def smooth_random_trajectory(rng: np.random.Generator, n: int = 64) -> Trajectory:
    """Random closed-form smooth curve: a few Fourier terms per axis."""
    t = np.linspace(0.0, 1.0, n)
    xyz = np.zeros((n, 3))
    for axis in range(3):
        for k in range(1, 4):
            a, b = rng.normal(size=2)
            xyz[:, axis] += a * np.sin(2 * np.pi * k * t) + b * np.cos(2 * np.pi * k * t)
    return make_trajectory(xyz * 50.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
