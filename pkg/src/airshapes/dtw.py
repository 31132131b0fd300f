"""Banded dynamic time warping and K-nearest-neighbor classification.

Local cost is squared Euclidean distance (no square root), summed along the
warping path with no path-length normalization. The band constraint is
slope-normalized so it is symmetric for unequal-length inputs:
cell (i, j) is admissible iff |i*len_b - j*len_a| <= radius * max(len_a, len_b).

The recurrence runs through a numba-compiled kernel when numba is installed;
the pure-Python fallback performs the identical operation sequence, so both
paths produce bit-identical costs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionMismatchError

try:  # optional acceleration; semantics are identical without it
    from numba import njit as _njit
except ImportError:  # pragma: no cover - depends on environment
    _njit = None

DEFAULT_BAND_FRACTION = 0.10


@dataclass(frozen=True)
class DtwConfig:
    """band_radius None means the default 10% of the longer sequence."""

    band_radius: int | None = None
    k: int = 1

    def __post_init__(self):
        if self.band_radius is not None and self.band_radius < 0:
            raise ConfigError("band_radius must be nonnegative")
        if self.k < 1:
            raise ConfigError("k must be >= 1")

    def effective_radius(self, len_a: int, len_b: int) -> int:
        if self.band_radius is not None:
            return self.band_radius
        return max(1, round(DEFAULT_BAND_FRACTION * max(len_a, len_b)))


def _dtw_core(a, b, bound):
    la, lb = a.shape[0], b.shape[0]
    d = a.shape[1]
    prev = np.full(lb, np.inf)
    cur = np.full(lb, np.inf)
    for i in range(la):
        lo = int(math.ceil((i * lb - bound) / la))
        if lo < 0:
            lo = 0
        hi = int(math.floor((i * lb + bound) / la))
        if hi > lb - 1:
            hi = lb - 1
        if lo > hi:
            return np.inf
        for j in range(lb):
            cur[j] = np.inf
        for j in range(lo, hi + 1):
            c = 0.0
            for k in range(d):
                diff = a[i, k] - b[j, k]
                c += diff * diff
            if i == 0:
                cur[j] = c if j == 0 else cur[j - 1] + c
            else:
                best = prev[j]
                if j > 0:
                    if prev[j - 1] < best:
                        best = prev[j - 1]
                    if cur[j - 1] < best:
                        best = cur[j - 1]
                cur[j] = best + c
        prev, cur = cur, prev
    return prev[lb - 1]


_dtw_core_fast = _njit(cache=False, nogil=True)(_dtw_core) if _njit else None


def dtw_distance(a: np.ndarray, b: np.ndarray, cfg: DtwConfig = DtwConfig()) -> float:
    """Cumulative min-of-three warping cost within the band.

    Symmetric in its arguments; returns +inf when the band disconnects the
    start from the end.
    """
    a = np.ascontiguousarray(np.atleast_2d(np.asarray(a, dtype=float)))
    b = np.ascontiguousarray(np.atleast_2d(np.asarray(b, dtype=float)))
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(
            f"sequence dims differ: {a.shape[1]} vs {b.shape[1]}"
        )
    la, lb = a.shape[0], b.shape[0]
    if la == 0 or lb == 0:
        raise ConfigError("sequences must be non-empty")
    bound = float(cfg.effective_radius(la, lb)) * max(la, lb)
    core = _dtw_core_fast if _dtw_core_fast is not None else _dtw_core
    return float(core(a, b, bound))


def knn_classify(
    test: np.ndarray,
    train: list[tuple[str, np.ndarray]],
    cfg: DtwConfig = DtwConfig(),
) -> tuple[str, list[tuple[str, float]]]:
    """Majority vote among the k nearest training sequences by DTW cost.

    Vote ties break toward the label with the smaller summed distance, then
    lexicographically. Returns the winning label and the k nearest
    (label, distance) neighbors in ascending order.
    """
    if not train:
        raise ConfigError("training set is empty")
    if cfg.k > len(train):
        raise ConfigError(f"k={cfg.k} exceeds training set size {len(train)}")
    ranked = sorted(
        (dtw_distance(test, seq, cfg), label, idx)
        for idx, (label, seq) in enumerate(train)
    )
    nearest = ranked[: cfg.k]
    votes: dict[str, int] = {}
    sums: dict[str, float] = {}
    for dist, label, _ in nearest:
        votes[label] = votes.get(label, 0) + 1
        sums[label] = sums.get(label, 0.0) + dist
    winner = min(votes, key=lambda lbl: (-votes[lbl], sums[lbl], lbl))
    return winner, [(label, dist) for dist, label, _ in nearest]


def label_distances(
    test: np.ndarray,
    train: list[tuple[str, np.ndarray]],
    cfg: DtwConfig = DtwConfig(),
) -> dict[str, float]:
    """Best (smallest) DTW distance to each training label."""
    best: dict[str, float] = {}
    for label, seq in train:
        dist = dtw_distance(test, seq, cfg)
        if label not in best or dist < best[label]:
            best[label] = dist
    return best
