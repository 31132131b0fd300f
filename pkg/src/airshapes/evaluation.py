"""Cross-validation, metrics, confusion analysis, and the experiment runner.

Reports are plain dicts serialized as canonical JSON (sorted keys, fixed
separators), so one (config, seed) pair always produces byte-identical
report files.
"""

from __future__ import annotations

import json
import os
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .dtw import DtwConfig, knn_classify, label_distances
from .errors import ConfigError, ValidationError
from .features import FeatureDim, curvature_moments, extract_f7, extract_f12
from .hmm import (
    DEFAULT_GAUSSIANS,
    DEFAULT_STATES,
    RecognitionResult,
    TrainConfig,
    apply_rejection,
    forward_log_likelihood_batch,
    train_classifier_bank,
)
from .tracking import GestureSample, GestureType, read_manifest, load_recording_file
from .trajectory import normalize, project_to_plane, resample, spot_gestures

REPORT_SCHEMA_VERSION = 1


# --- folds ---------------------------------------------------------------------


@dataclass(frozen=True)
class Fold:
    train_ids: tuple[str, ...]
    test_ids: tuple[str, ...]


def kfold_split(
    items: Sequence[tuple[str, str]], k: int, seed: int = 0
) -> list[Fold]:
    """Stratified, seeded, deterministic folds over (id, label) pairs."""
    if k < 2:
        raise ConfigError("k must be >= 2")
    by_label: dict[str, list[str]] = {}
    for sample_id, label in items:
        by_label.setdefault(label, []).append(sample_id)
    rng = np.random.default_rng(seed)
    buckets: list[list[str]] = [[] for _ in range(k)]
    for label in sorted(by_label):
        ids = sorted(by_label[label])
        if len(ids) < k:
            raise ConfigError(
                f"class {label!r} has only {len(ids)} samples; needs >= {k}"
            )
        perm = rng.permutation(len(ids))
        for pos, idx in enumerate(perm):
            buckets[pos % k].append(ids[idx])
    all_ids = {sid for sid, _ in items}
    folds = []
    for i in range(k):
        test = tuple(sorted(buckets[i]))
        train = tuple(sorted(all_ids.difference(test)))
        folds.append(Fold(train_ids=train, test_ids=test))
    return folds


def user_disjoint_split(
    items: Sequence[tuple[str, str]], k: int
) -> list[Fold]:
    """Folds that keep each user's samples within a single test fold."""
    if k < 2:
        raise ConfigError("k must be >= 2")
    by_user: dict[str, list[str]] = {}
    for sample_id, user in items:
        by_user.setdefault(user, []).append(sample_id)
    users = sorted(by_user)
    if len(users) < k:
        raise ConfigError(f"only {len(users)} users for {k} folds")
    all_ids = {sid for sid, _ in items}
    folds = []
    for i in range(k):
        test_ids: list[str] = []
        for j, user in enumerate(users):
            if j % k == i:
                test_ids.extend(by_user[user])
        test = tuple(sorted(test_ids))
        train = tuple(sorted(all_ids.difference(test)))
        folds.append(Fold(train_ids=train, test_ids=test))
    return folds


# --- metrics --------------------------------------------------------------------


@dataclass(frozen=True)
class EvalCounts:
    n_correct: int
    n_error: int
    n_reject: int
    n_total: int = field(init=False)

    def __post_init__(self):
        if min(self.n_correct, self.n_error, self.n_reject) < 0:
            raise ValidationError("counts must be nonnegative")
        object.__setattr__(
            self, "n_total", self.n_correct + self.n_error + self.n_reject
        )

    def to_obj(self) -> dict:
        return {
            "correct": self.n_correct,
            "error": self.n_error,
            "reject": self.n_reject,
            "total": self.n_total,
        }


def compute_metrics(counts: EvalCounts) -> dict:
    """Recognition/error/reject rates and reliability, as percentages."""
    if counts.n_total <= 0:
        raise ConfigError("metrics need at least one tested sample")
    recognized = counts.n_correct + counts.n_error
    return {
        "recognition": counts.n_correct * 100.0 / counts.n_total,
        "error": counts.n_error * 100.0 / counts.n_total,
        "reject": counts.n_reject * 100.0 / counts.n_total,
        "reliability": (
            counts.n_correct * 100.0 / recognized if recognized > 0 else None
        ),
    }


class ConfusionMatrix:
    """Row = true label, column = predicted; rejected samples excluded."""

    def __init__(self, labels: Sequence[str], matrix: np.ndarray):
        self.labels = tuple(labels)
        matrix = np.asarray(matrix, dtype=int)
        if matrix.shape != (len(self.labels), len(self.labels)):
            raise ValidationError("confusion matrix shape mismatch")
        if np.any(matrix < 0):
            raise ValidationError("confusion counts must be nonnegative")
        matrix.setflags(write=False)
        self.matrix = matrix

    @classmethod
    def from_results(
        cls,
        results: Sequence[tuple[str, RecognitionResult]],
        labels: Sequence[str] | None = None,
    ) -> "ConfusionMatrix":
        if labels is None:
            labels = sorted({t for t, _ in results})
        index = {label: i for i, label in enumerate(labels)}
        matrix = np.zeros((len(labels), len(labels)), dtype=int)
        for true_label, result in results:
            if result.rejected:
                continue
            matrix[index[true_label], index[result.best]] += 1
        return cls(labels, matrix)

    def most_confused(self, limit: int = 10) -> list[tuple[str, str, int]]:
        pairs = [
            (self.labels[i], self.labels[j], int(self.matrix[i, j]))
            for i in range(len(self.labels))
            for j in range(len(self.labels))
            if i != j and self.matrix[i, j] > 0
        ]
        pairs.sort(key=lambda p: (-p[2], p[0], p[1]))
        return pairs[:limit]

    def to_obj(self) -> dict:
        return {
            "labels": list(self.labels),
            "matrix": self.matrix.tolist(),
            "most_confused": [list(p) for p in self.most_confused()],
        }


def confusion(
    results: Sequence[tuple[str, RecognitionResult]],
    labels: Sequence[str] | None = None,
) -> ConfusionMatrix:
    return ConfusionMatrix.from_results(results, labels)


def top_n_accuracy(
    results: Sequence[tuple[str, RecognitionResult]], n: int
) -> float:
    """Percentage of samples whose true label appears in the first n ranks."""
    if n < 1:
        raise ConfigError("n must be >= 1")
    if not results:
        raise ConfigError("no results")
    hits = sum(
        1
        for true_label, result in results
        if true_label in [label for label, _ in result.ranking[:n]]
    )
    return hits * 100.0 / len(results)


def counts_from_results(
    results: Sequence[tuple[str, RecognitionResult]]
) -> EvalCounts:
    n_c = n_e = n_r = 0
    for true_label, result in results:
        if result.rejected:
            n_r += 1
        elif result.best == true_label:
            n_c += 1
        else:
            n_e += 1
    return EvalCounts(n_c, n_e, n_r)


# --- experiment configuration ------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    manifest: str
    classifier: str = "hmm"  # "hmm" | "dtw-knn"
    features: str = "f12"  # "raw" | "f7" | "f12" | "moments6"
    gesture_types: tuple[str, ...] = ("single", "multi")
    k_folds: int = 5
    seed: int = 0
    split: str = "stratified"  # or "user-disjoint"
    resample_points: int = 64
    raw_resample_points: int = 32
    hmm_states: int | None = None  # None: per-type defaults (7 / 8)
    hmm_gaussians: int | None = None  # None: per-type defaults (256 / 64), auto-shrunk
    hmm_max_iter: int = 12
    hmm_tol: float = 1e-4
    variance_floor: float = 1e-4
    dtw_band_radius: int | None = None
    knn_k: int = 1
    rejection_thresholds: tuple[float, ...] = ()
    top_n_max: int = 5
    sweep_axis: str | None = None  # "train_per_class" | "states" | "gaussians"
    sweep_values: tuple = ()

    def __post_init__(self):
        if self.classifier not in ("hmm", "dtw-knn"):
            raise ConfigError(f"unknown classifier {self.classifier!r}")
        if self.features not in ("raw", "f7", "f12", "moments6"):
            raise ConfigError(f"unknown feature set {self.features!r}")
        if self.split not in ("stratified", "user-disjoint"):
            raise ConfigError(f"unknown split mode {self.split!r}")
        bad_types = set(self.gesture_types) - {"single", "multi"}
        if bad_types or not self.gesture_types:
            raise ConfigError(f"bad gesture types {self.gesture_types!r}")
        if self.sweep_axis not in (None, "train_per_class", "states", "gaussians"):
            raise ConfigError(f"unknown sweep axis {self.sweep_axis!r}")
        if self.sweep_axis and not self.sweep_values:
            raise ConfigError("sweep_values required with sweep_axis")
        if any(t < 0 for t in self.rejection_thresholds):
            raise ConfigError("rejection thresholds must be >= 0")

    def to_obj(self) -> dict:
        return {
            "manifest": self.manifest,
            "classifier": self.classifier,
            "features": self.features,
            "gesture_types": list(self.gesture_types),
            "k_folds": self.k_folds,
            "seed": self.seed,
            "split": self.split,
            "resample_points": self.resample_points,
            "raw_resample_points": self.raw_resample_points,
            "hmm_states": self.hmm_states,
            "hmm_gaussians": self.hmm_gaussians,
            "hmm_max_iter": self.hmm_max_iter,
            "hmm_tol": self.hmm_tol,
            "variance_floor": self.variance_floor,
            "dtw_band_radius": self.dtw_band_radius,
            "knn_k": self.knn_k,
            "rejection_thresholds": list(self.rejection_thresholds),
            "top_n_max": self.top_n_max,
            "sweep_axis": self.sweep_axis,
            "sweep_values": list(self.sweep_values),
        }

    @classmethod
    def from_obj(cls, obj: Mapping) -> "ExperimentConfig":
        kwargs = dict(obj)
        for key in ("gesture_types", "rejection_thresholds", "sweep_values"):
            if key in kwargs and kwargs[key] is not None:
                kwargs[key] = tuple(kwargs[key])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(f"bad experiment config: {exc}") from exc

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc.msg}") from exc
        return cls.from_obj(obj)


# --- dataset loading and feature preparation ----------------------------------------


@dataclass(frozen=True)
class DatasetSample:
    id: str
    label: str
    user: str
    gesture_type: GestureType
    sample: GestureSample


def load_dataset(manifest_path: str | os.PathLike) -> list[DatasetSample]:
    """Load every manifest entry, spot its gesture, attach the label."""
    manifest_path = Path(manifest_path)
    base = manifest_path.parent
    out: list[DatasetSample] = []
    for entry in read_manifest(manifest_path):
        recording = load_recording_file(base / entry.path, user_id=entry.user)
        spotted = spot_gestures(recording)
        if len(spotted) != 1:
            raise ValidationError(
                f"{entry.path}: expected exactly 1 gesture, spotted {len(spotted)}"
            )
        spot = spotted[0]
        if spot.gesture_type is not entry.gesture_type:
            raise ValidationError(
                f"{entry.path}: spotted {spot.gesture_type.value}, "
                f"manifest says {entry.gesture_type.value}"
            )
        out.append(
            DatasetSample(
                id=entry.path,
                label=entry.label,
                user=entry.user,
                gesture_type=entry.gesture_type,
                sample=spot,
            )
        )
    return out


def prepare_sequence(
    sample: GestureSample, features: str, resample_points: int, raw_points: int
) -> np.ndarray:
    """Trajectory to observation matrix for the chosen feature set."""
    if features == "raw":
        return resample(sample.trajectory, raw_points).xyz
    traj = normalize(resample(sample.trajectory, resample_points))
    if features == "f7":
        return extract_f7(project_to_plane(traj), sample.id).values
    if features == "f12":
        return extract_f12(traj, sample.id).values
    if features == "moments6":
        return curvature_moments(traj, sample.id).values[None, :]
    raise ConfigError(f"unknown feature set {features!r}")


_FEATURE_DIMS = {
    "raw": None,
    "f7": FeatureDim.F7,
    "f12": FeatureDim.F12,
    "moments6": FeatureDim.MOMENTS6,
}


# --- the runner -----------------------------------------------------------------


def _fold_seed(seed: int, type_idx: int, fold_idx: int) -> int:
    return (seed * 100003 + type_idx * 1009 + fold_idx * 17 + 7) % (2**31 - 1)


def _hmm_fold_results(
    config: ExperimentConfig,
    gesture_type: GestureType,
    type_idx: int,
    fold_idx: int,
    sequences: Mapping[str, np.ndarray],
    labels_by_id: Mapping[str, str],
    fold: Fold,
    train_ids: Sequence[str],
) -> list[tuple[str, RecognitionResult]]:
    states = config.hmm_states or DEFAULT_STATES[gesture_type.value]
    gaussians = config.hmm_gaussians or DEFAULT_GAUSSIANS[gesture_type.value]
    if config.features == "moments6":
        states = 1  # single observation per sample; no temporal structure
    by_label: dict[str, list[np.ndarray]] = {}
    for sid in train_ids:
        by_label.setdefault(labels_by_id[sid], []).append(sequences[sid])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # mixture shrink warnings at desk scale
        bank = train_classifier_bank(
            by_label,
            states=states,
            gaussians=gaussians,
            seed=_fold_seed(config.seed, type_idx, fold_idx),
            config=TrainConfig(
                max_iter=config.hmm_max_iter,
                tol=config.hmm_tol,
                variance_floor=config.variance_floor,
            ),
            feature_set=config.features,
            gesture_type=gesture_type.value,
        )
    test_ids = list(fold.test_ids)
    batch = np.stack([sequences[sid] for sid in test_ids])
    scores = np.column_stack(
        [forward_log_likelihood_batch(batch, bank.models[lbl]) for lbl in bank.labels]
    )
    results = []
    for row, sid in enumerate(test_ids):
        ranked = sorted(
            zip(bank.labels, scores[row].tolist()), key=lambda it: (-it[1], it[0])
        )
        margin = ranked[0][1] - ranked[1][1] if len(ranked) > 1 else 0.0
        results.append(
            (labels_by_id[sid], RecognitionResult(tuple(ranked), margin=margin))
        )
    return results


def _dtw_fold_results(
    config: ExperimentConfig,
    sequences: Mapping[str, np.ndarray],
    labels_by_id: Mapping[str, str],
    fold: Fold,
    train_ids: Sequence[str],
) -> list[tuple[str, RecognitionResult]]:
    cfg = DtwConfig(band_radius=config.dtw_band_radius, k=config.knn_k)
    train = [(labels_by_id[sid], sequences[sid]) for sid in train_ids]
    results = []
    for sid in fold.test_ids:
        voted, _ = knn_classify(sequences[sid], train, cfg)
        best = label_distances(sequences[sid], train, cfg)
        ranked = sorted(((lbl, -dist) for lbl, dist in best.items()),
                        key=lambda it: (-it[1], it[0]))
        # The vote (k > 1) may disagree with the nearest label; keep the voted
        # winner on top so counts follow the K-NN rule.
        if ranked[0][0] != voted:
            ranked = [(voted, ranked[0][1])] + [r for r in ranked if r[0] != voted]
        margin = ranked[0][1] - ranked[1][1] if len(ranked) > 1 else 0.0
        results.append(
            (labels_by_id[sid], RecognitionResult(tuple(ranked), margin=max(margin, 0.0)))
        )
    return results


def _rejection_point(
    results: Sequence[tuple[str, RecognitionResult]], threshold: float
) -> dict:
    counts = counts_from_results(
        [(t, apply_rejection(r, threshold)) for t, r in results]
    )
    return {
        "threshold": threshold,
        "counts": counts.to_obj(),
        "metrics": compute_metrics(counts),
    }


def _subsample_train(
    train_ids: Sequence[str],
    labels_by_id: Mapping[str, str],
    per_class: int,
    seed: int,
) -> list[str]:
    by_label: dict[str, list[str]] = {}
    for sid in train_ids:
        by_label.setdefault(labels_by_id[sid], []).append(sid)
    rng = np.random.default_rng([seed, per_class])
    keep: list[str] = []
    for label in sorted(by_label):
        ids = sorted(by_label[label])
        perm = rng.permutation(len(ids))
        keep.extend(ids[i] for i in perm[:per_class])
    return sorted(keep)


def _evaluate_once(
    config: ExperimentConfig,
    dataset: Sequence[DatasetSample],
    train_per_class: int | None = None,
) -> dict:
    """Run every gesture type and fold; returns the per-type report section."""
    per_type: dict[str, dict] = {}
    all_results: list[tuple[str, RecognitionResult]] = []

    for type_idx, type_name in enumerate(sorted(set(config.gesture_types))):
        gesture_type = GestureType(type_name)
        subset = [s for s in dataset if s.gesture_type is gesture_type]
        if not subset:
            continue
        raw_pts = config.raw_resample_points
        sequences = {
            s.id: prepare_sequence(s.sample, config.features, config.resample_points, raw_pts)
            for s in subset
        }
        labels_by_id = {s.id: s.label for s in subset}
        if config.split == "stratified":
            folds = kfold_split(
                [(s.id, s.label) for s in subset], config.k_folds, config.seed
            )
        else:
            folds = user_disjoint_split(
                [(s.id, s.user) for s in subset], config.k_folds
            )

        type_results: list[tuple[str, RecognitionResult]] = []
        fold_sections = []
        for fold_idx, fold in enumerate(folds):
            train_ids: Sequence[str] = fold.train_ids
            if train_per_class is not None:
                train_ids = _subsample_train(
                    train_ids, labels_by_id, train_per_class, config.seed
                )
            if config.classifier == "hmm":
                results = _hmm_fold_results(
                    config, gesture_type, type_idx, fold_idx,
                    sequences, labels_by_id, fold, train_ids,
                )
            else:
                results = _dtw_fold_results(
                    config, sequences, labels_by_id, fold, train_ids
                )
            counts = counts_from_results(results)
            fold_sections.append(
                {
                    "fold": fold_idx,
                    "counts": counts.to_obj(),
                    "metrics": compute_metrics(counts),
                }
            )
            type_results.extend(results)

        labels = sorted({s.label for s in subset})
        counts = counts_from_results(type_results)
        section = {
            "labels": labels,
            "folds": fold_sections,
            "aggregate": {
                "counts": counts.to_obj(),
                "metrics": compute_metrics(counts),
            },
            "confusion": confusion(type_results, labels).to_obj(),
            "top_n": [
                [n, top_n_accuracy(type_results, n)]
                for n in range(1, min(config.top_n_max, len(labels)) + 1)
            ],
            "rejection_sweep": [
                _rejection_point(type_results, thr)
                for thr in config.rejection_thresholds
            ],
        }
        per_type[type_name] = section
        all_results.extend(type_results)

    overall = counts_from_results(all_results)
    return {
        "per_type": per_type,
        "aggregate": {
            "counts": overall.to_obj(),
            "metrics": compute_metrics(overall),
            "accuracy": overall.n_correct * 100.0 / overall.n_total,
        },
    }


def run_experiment(config: ExperimentConfig) -> dict:
    """Execute the configured experiment; returns the report dict."""
    dataset = load_dataset(config.manifest)
    report = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "provenance": {"config": config.to_obj()},
    }
    body = _evaluate_once(config, dataset)
    report.update(body)

    if config.sweep_axis:
        points = []
        for value in config.sweep_values:
            if config.sweep_axis == "train_per_class":
                sub = _evaluate_once(config, dataset, train_per_class=int(value))
            elif config.sweep_axis == "states":
                sub_cfg = replace(config, hmm_states=int(value), sweep_axis=None, sweep_values=())
                sub = _evaluate_once(sub_cfg, dataset)
            else:  # gaussians
                sub_cfg = replace(config, hmm_gaussians=int(value), sweep_axis=None, sweep_values=())
                sub = _evaluate_once(sub_cfg, dataset)
            points.append({"value": value, "accuracy": sub["aggregate"]["accuracy"]})
        report["sweep"] = {"axis": config.sweep_axis, "points": points}
    return report


def report_bytes(report: Mapping) -> bytes:
    """Canonical JSON encoding; identical reports byte-compare equal."""
    return (json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n").encode(
        "utf-8"
    )


def write_report(report: Mapping, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(report_bytes(report))


# --- plot emission ---------------------------------------------------------------


def svg_line_chart(
    series: Mapping[str, Sequence[tuple[float, float]]],
    title: str,
    width: int = 480,
    height: int = 320,
) -> str:
    """Minimal deterministic SVG line chart (no plotting library)."""
    pad = 48
    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    if not xs:
        raise ConfigError("nothing to plot")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def sy(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"]
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad}" y="{height - pad + 16}" font-size="10">{x0:g}</text>',
        f'<text x="{width - pad}" y="{height - pad + 16}" text-anchor="end" font-size="10">{x1:g}</text>',
        f'<text x="{pad - 4}" y="{height - pad}" text-anchor="end" font-size="10">{y0:g}</text>',
        f'<text x="{pad - 4}" y="{pad}" text-anchor="end" font-size="10">{y1:g}</text>',
    ]
    for idx, (name, pts) in enumerate(sorted(series.items())):
        color = colors[idx % len(colors)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{width - pad}" y="{pad + 14 * idx}" text-anchor="end" '
            f'font-size="11" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_report_plots(report: Mapping, out_dir: str | os.PathLike) -> list[Path]:
    """Write top-n and sweep curves from a report as SVG files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    top_n_series = {
        f"{type_name}": [(float(n), float(acc)) for n, acc in section["top_n"]]
        for type_name, section in report.get("per_type", {}).items()
        if section.get("top_n")
    }
    if top_n_series:
        path = out / "top_n_accuracy.svg"
        path.write_text(
            svg_line_chart(top_n_series, "accuracy vs number of choices"),
            encoding="utf-8",
        )
        written.append(path)
    rej_series = {}
    for type_name, section in report.get("per_type", {}).items():
        pts = [
            (float(row["metrics"]["reject"]), float(row["metrics"]["error"]))
            for row in section.get("rejection_sweep", [])
        ]
        if pts:
            rej_series[type_name] = pts
    if rej_series:
        path = out / "rejection_tradeoff.svg"
        path.write_text(
            svg_line_chart(rej_series, "error rate vs reject rate"), encoding="utf-8"
        )
        written.append(path)
    if "sweep" in report:
        pts = [
            (float(p["value"]), float(p["accuracy"]))
            for p in report["sweep"]["points"]
        ]
        path = out / f"sweep_{report['sweep']['axis']}.svg"
        path.write_text(
            svg_line_chart({"accuracy": pts}, f"accuracy vs {report['sweep']['axis']}"),
            encoding="utf-8",
        )
        written.append(path)
    return written
