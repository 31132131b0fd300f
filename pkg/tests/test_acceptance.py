"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s`. The desk-scale experiment
(36 classes x 15 samples, 5-fold CV) is generated once per session and shared
by the criteria that consume it; the whole module runs in about two minutes.
"""

import itertools
import math

import numpy as np
import pytest

from airshapes.dtw import DtwConfig, dtw_distance
from airshapes.evaluation import ExperimentConfig, report_bytes, run_experiment
from airshapes.features import extract_f12
from airshapes.hmm import TrainConfig, baum_welch, forward_log_likelihood, init_model
from airshapes.render import build_mesh, extract_params, _MESH_BUILDERS
from airshapes.synth import NoiseSpec, generate_dataset, generate_recording, get_shape_spec, shape_specs
from airshapes.tracking import GestureType, Trajectory
from airshapes.trajectory import spot_gestures

from conftest import smooth_random_trajectory, straight_line
from test_hmm import enumerate_log_likelihood, make_toy_model
from test_dtw import brute_force_dtw
from test_render import check_closed_manifold, euler_characteristic


def _report(name: str, detail: str) -> None:
    print(f"\nACCEPTANCE PASS | {name}: {detail}")


REJECTION_THRESHOLDS = (0.0, 2.0, 10.0, 50.0, 200.0, 1e9)


@pytest.fixture(scope="module")
def desk(tmp_path_factory):
    """Desk-scale dataset plus the three experiment reports."""
    out = tmp_path_factory.mktemp("desk")
    manifest = generate_dataset(
        shape_specs(), per_class=15, noise=NoiseSpec(), seed=42, out_dir=out
    )
    common = dict(manifest=str(manifest), k_folds=5, seed=42)
    cfg_single = ExperimentConfig(
        classifier="hmm", features="f7", gesture_types=("single",),
        hmm_gaussians=8, hmm_max_iter=12, top_n_max=21,
        rejection_thresholds=REJECTION_THRESHOLDS, **common,
    )
    cfg_multi = ExperimentConfig(
        classifier="hmm", features="f12", gesture_types=("multi",),
        hmm_gaussians=8, hmm_max_iter=12, top_n_max=15,
        rejection_thresholds=REJECTION_THRESHOLDS, **common,
    )
    cfg_dtw = ExperimentConfig(
        classifier="dtw-knn", features="raw", raw_resample_points=32, **common
    )
    return {
        "configs": {"single": cfg_single, "multi": cfg_multi, "dtw": cfg_dtw},
        "reports": {
            "single": run_experiment(cfg_single),
            "multi": run_experiment(cfg_multi),
            "dtw": run_experiment(cfg_dtw),
        },
    }


def test_criterion_feature_identities(rng):
    for direction in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        seq = extract_f12(straight_line(24, direction))
        assert np.max(np.abs(seq.values[:, 3])) < 1e-9  # curvature
        assert np.max(np.abs(seq.values[:, 8])) < 1e-9  # lineness
        assert np.max(np.abs(seq.values[:, 7] + 1.0)) < 1e-9  # curliness == -1

    worst = 0.0
    for _ in range(1000):
        seq = extract_f12(smooth_random_trajectory(rng, 24))
        rows = seq.values[~seq.flagged]
        if not len(rows):
            continue
        dir_err = np.max(np.abs(np.linalg.norm(rows[:, 0:3], axis=1) - 1.0))
        slope_err = np.max(np.abs(np.linalg.norm(rows[:, 9:12], axis=1) - 1.0))
        worst = max(worst, dir_err, slope_err)
    assert worst < 1e-12
    _report(
        "feature identities",
        f"straight-line K/lineness/curliness exact; unit-norm worst dev {worst:.2e} "
        "over 1000 random smooth trajectories",
    )


def test_criterion_scaling_laws(rng):
    invariant_cols = [0, 1, 2, 4, 5, 6, 7, 9, 10, 11]
    worst_inv, worst_k, worst_line = 0.0, 0.0, 0.0
    for _ in range(100):
        traj = smooth_random_trajectory(rng, 32)
        base = extract_f12(traj)
        for s in (0.5, 2.0, 10.0):
            scaled = extract_f12(Trajectory(traj.xyz * s, traj.times))
            keep = ~(base.flagged | scaled.flagged)
            a, b = base.values[keep], scaled.values[keep]
            worst_inv = max(worst_inv, float(np.max(np.abs(a[:, invariant_cols] - b[:, invariant_cols]))))
            nz = a[:, 3] > 1e-12
            worst_k = max(worst_k, float(np.max(np.abs(b[nz, 3] * s / a[nz, 3] - 1.0))))
            nz = a[:, 8] > 1e-12
            worst_line = max(worst_line, float(np.max(np.abs(b[nz, 8] / (a[nz, 8] * s * s) - 1.0))))
    assert worst_inv < 1e-9
    assert worst_k < 1e-6
    assert worst_line < 1e-6
    _report(
        "scaling laws",
        f"invariants dev {worst_inv:.2e}; K~1/s rel dev {worst_k:.2e}; "
        f"lineness~s^2 rel dev {worst_line:.2e} (100 trajectories, s in 0.5/2/10)",
    )


def test_criterion_forward_oracle(rng):
    worst = 0.0
    for _ in range(50):
        states = int(rng.integers(1, 4))
        mixtures = int(rng.integers(1, 3))
        t_len = int(rng.integers(1, 7))
        model = make_toy_model(rng, states, mixtures)
        obs = rng.normal(0.0, 1.5, (t_len, 6))
        ours = forward_log_likelihood(obs, model)
        oracle = enumerate_log_likelihood(model, obs)
        rel = abs(ours - oracle) / max(abs(oracle), 1e-9)
        worst = max(worst, rel)
    assert worst < 1e-9
    _report("forward-algorithm oracle", f"50 toy HMMs vs path enumeration, worst rel err {worst:.2e}")


def test_criterion_baum_welch_monotone(rng):
    worst_drop = 0.0
    for run in range(20):
        seqs = []
        for _ in range(12):
            t1, t2 = (int(x) for x in rng.integers(5, 10, 2))
            seqs.append(np.vstack([
                rng.normal(0.0, 0.6, (t1, 6)), rng.normal(3.0, 0.6, (t2, 6)),
            ]))
        model = init_model(seqs, states=2, gaussians=2, seed=run)
        trained, history = baum_welch(model, seqs, TrainConfig(max_iter=8, tol=0.0))
        drops = -np.minimum(np.diff(history), 0.0)
        worst_drop = max(worst_drop, float(drops.max(initial=0.0)))
        assert np.allclose(trained.transitions.sum(axis=1), 1.0, atol=1e-9)
        assert np.all(trained.transitions >= 0)
    assert worst_drop <= 1e-8
    _report("baum-welch monotonicity", f"20 runs; worst likelihood drop {worst_drop:.2e}; rows on simplex")


def test_criterion_dtw_oracle(rng):
    unbounded = DtwConfig(band_radius=10_000)
    for _ in range(200):
        a = rng.normal(0, 1, (int(rng.integers(1, 7)), 3))
        b = rng.normal(0, 1, (int(rng.integers(1, 7)), 3))
        assert dtw_distance(a, b, unbounded) == brute_force_dtw(a, b)
    worst_sym = 0.0
    for _ in range(1000):
        a = rng.normal(0, 1, (int(rng.integers(1, 9)), 2))
        b = rng.normal(0, 1, (int(rng.integers(1, 9)), 2))
        worst_sym = max(worst_sym, abs(dtw_distance(a, b, unbounded) - dtw_distance(b, a, unbounded)))
        assert dtw_distance(a, a, unbounded) == 0.0
    assert worst_sym < 1e-12
    _report("dtw oracle", f"200 pairs equal brute force exactly; symmetry dev {worst_sym:.2e} on 1000 pairs")


def _combined_accuracy(rep_a, rep_b):
    ca, cb = rep_a["aggregate"]["counts"], rep_b["aggregate"]["counts"]
    return (ca["correct"] + cb["correct"]) * 100.0 / (ca["total"] + cb["total"])


def test_criterion_end_to_end_desk_scale(desk):
    hmm_acc = _combined_accuracy(desk["reports"]["single"], desk["reports"]["multi"])
    dtw_acc = desk["reports"]["dtw"]["aggregate"]["accuracy"]
    assert hmm_acc >= 85.0
    assert hmm_acc > dtw_acc
    _report(
        "end-to-end desk scale",
        f"HMM f7/f12 mean accuracy {hmm_acc:.2f}% (>= 85%), DTW+K-NN raw "
        f"{dtw_acc:.2f}%; ordering matches the published baseline gap",
    )


def test_criterion_metrics_algebra(desk):
    checked = 0
    for report in desk["reports"].values():
        sections = list(report["per_type"].values())
        for section in sections:
            rows = [section["aggregate"]] + section["folds"] + section["rejection_sweep"]
            for row in rows:
                m = row["metrics"]
                total = m["recognition"] + m["error"] + m["reject"]
                assert abs(total - 100.0) < 1e-9
                checked += 1
            sweep = section["rejection_sweep"]
            rejects = [row["counts"]["reject"] for row in sweep]
            errors = [row["counts"]["error"] for row in sweep]
            assert rejects == sorted(rejects)
            assert errors == sorted(errors, reverse=True)
    _report(
        "metrics algebra",
        f"{checked} evaluations sum to 100% within 1e-9; reject rate nondecreasing "
        "and retained error count nonincreasing across the threshold sweep",
    )


def test_criterion_top_n_monotone(desk):
    for key, n_labels in (("single", 21), ("multi", 15)):
        section = desk["reports"][key]["per_type"][key]
        accs = [acc for _, acc in section["top_n"]]
        assert accs == sorted(accs)
        assert len(accs) == n_labels
        assert accs[-1] == 100.0
    _report("top-n monotonicity", "accuracy nondecreasing in n; top-|labels| = 100% for both banks")


def test_criterion_render_round_trip():
    worst = 0.0
    for label in ("cylinder", "cone", "sphere", "cube"):
        spec = get_shape_spec(label, GestureType.MULTI_FINGER).fixed(size=120.0)
        recording, truth = generate_recording(spec, NoiseSpec.none(), seed=3)
        sample = spot_gestures(recording)[0]
        params = extract_params(sample)
        worst = max(worst, abs(params.height - truth.height), abs(params.diameter - truth.diameter))
        assert abs(params.height - truth.height) < 1e-6
        assert abs(params.diameter - truth.diameter) < 1e-6

    dims_worst = 0.0
    for label in sorted(_MESH_BUILDERS):
        spec = get_shape_spec(label, GestureType.MULTI_FINGER).fixed(size=110.0)
        recording, _ = generate_recording(spec, NoiseSpec.none(), seed=5)
        params = extract_params(spot_gestures(recording)[0])
        verts, faces = build_mesh(label, params)
        check_closed_manifold(verts, faces)
        assert euler_characteristic(verts, faces) == 2
        span = verts.max(axis=0) - verts.min(axis=0)
        if label == "sphere":
            target = np.array([params.diameter] * 3)
        elif label in ("cylinder", "cone", "pipe", "hemisphere", "balloon", "bottle", "spiral"):
            target = np.array([params.diameter, params.height, params.diameter])
        else:
            target = np.array([params.length, params.height, params.width])
        dims_worst = max(dims_worst, float(np.max(np.abs(span - target))))
        assert np.allclose(span, target, atol=1e-6)
    _report(
        "render round trip",
        f"height/diameter recovered within {worst:.2e} mm on noiseless solids; all 15 "
        f"meshes closed 2-manifolds, dims within {dims_worst:.2e} mm of params",
    )


def test_criterion_determinism(desk):
    config = desk["configs"]["single"]
    first = report_bytes(desk["reports"]["single"])
    second = report_bytes(run_experiment(config))
    assert first == second
    _report(
        "determinism",
        f"single-finger end-to-end experiment re-run byte-identical "
        f"({len(first)} bytes)",
    )
