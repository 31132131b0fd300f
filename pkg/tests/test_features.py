import math

import numpy as np
import pytest

from airshapes.errors import TrajectoryTooShortError, ValidationError
from airshapes.features import (
    FeatureDim,
    FeatureSequence,
    FeatureVector,
    WindowExtents,
    aspect_2d,
    aspect_3d,
    curliness,
    curvature_2d,
    curvature_3d,
    curvature_moments,
    direction_2d,
    direction_3d,
    dump_feature_table,
    extract_f7,
    extract_f12,
    lineness,
    slope_3d,
)
from airshapes.tracking import Trajectory

from conftest import (
    circle_trajectory,
    helix_trajectory,
    make_trajectory,
    smooth_random_trajectory,
    straight_line,
)

SQ2 = math.sqrt(2.0) / 2.0


# --- direction -------------------------------------------------------------------


def test_direction_2d_uniform_plus_x():
    traj = straight_line(10, (1, 0, 0))
    assert direction_2d(traj, 4) == (-1.0, 0.0, False)


def test_direction_2d_uniform_minus_y():
    traj = straight_line(10, (0, -1, 0))
    assert direction_2d(traj, 4) == (0.0, 1.0, False)


def test_direction_2d_diagonal():
    traj = straight_line(10, (1, 1, 0))
    c, s, flag = direction_2d(traj, 4)
    assert not flag
    assert c == pytest.approx(-SQ2, abs=1e-12)
    assert s == pytest.approx(-SQ2, abs=1e-12)


def test_direction_2d_stationary_sentinel():
    xyz = np.zeros((9, 3))
    xyz[:, 0] = [0, 1, 1, 1, 1, 1, 2, 3, 4]
    traj = make_trajectory(xyz)
    assert direction_2d(traj, 3) == (0.0, 0.0, True)


def test_direction_3d_plus_z():
    traj = straight_line(10, (0, 0, 1))
    assert direction_3d(traj, 4) == (0.0, 0.0, -1.0, False)


def test_direction_3d_body_diagonal():
    traj = straight_line(10, (1, 1, 1))
    ca, cb, cg, flag = direction_3d(traj, 4)
    expected = -1.0 / math.sqrt(3.0)
    assert (ca, cb, cg) == pytest.approx((expected,) * 3, abs=1e-12)
    assert not flag


def test_direction_3d_planar_gives_exact_zero_cosg():
    traj = circle_trajectory(32)
    for t in range(1, 31):
        *_, cg, flag = direction_3d(traj, t)
        assert cg == 0.0 and not flag


def test_direction_unit_norm():
    traj = helix_trajectory(64)
    for t in range(1, 63):
        ca, cb, cg, flag = direction_3d(traj, t)
        assert not flag
        assert abs(ca**2 + cb**2 + cg**2 - 1.0) < 1e-12


def test_direction_index_out_of_range():
    traj = straight_line(10)
    with pytest.raises(ValidationError):
        direction_2d(traj, 0)
    with pytest.raises(ValidationError):
        direction_3d(traj, 9)


# --- curvature -------------------------------------------------------------------


def test_curvature_2d_straight_line():
    traj = straight_line(12, (3, 1, 0))
    c, s, flag = curvature_2d(traj, 5)
    assert (c, s) == pytest.approx((1.0, 0.0), abs=1e-12)
    assert not flag


def test_curvature_2d_right_angle_corner():
    # dense L shape: corner at index 6
    pts = [(i, 0.0, 0.0) for i in range(7)] + [(6.0, float(i), 0.0) for i in range(1, 7)]
    traj = make_trajectory(np.array(pts))
    c, s, flag = curvature_2d(traj, 6)
    assert not flag
    assert c == pytest.approx(0.0, abs=1e-12)
    assert abs(s) == pytest.approx(1.0, abs=1e-12)


def _dense_octagon(m: int = 4) -> Trajectory:
    verts = [
        (math.cos(j * math.pi / 4), math.sin(j * math.pi / 4), 0.0) for j in range(9)
    ]
    pts = []
    for j in range(8):
        a = np.array(verts[j])
        b = np.array(verts[j + 1])
        for k in range(m):
            pts.append(a + (b - a) * (k / m))
    pts.append(np.array(verts[8]))
    return make_trajectory(np.array(pts))


def test_curvature_2d_octagon_corner_turn():
    # At a corner of a CCW regular octagon the heading turns by exactly 45
    # degrees; frozen from the polygon's exterior angle.
    traj = _dense_octagon(4)
    for corner in (2, 3, 4):
        c, s, flag = curvature_2d(traj, corner * 4)
        assert not flag
        assert c == pytest.approx(SQ2, abs=1e-12)
        assert s == pytest.approx(SQ2, abs=1e-12)


def test_curvature_3d_collinear_is_zero():
    traj = straight_line(16, (1, 2, 3))
    for t in range(2, 13):
        k, flag = curvature_3d(traj, t)
        assert k == 0.0 and not flag


def test_curvature_3d_circle_constant():
    traj = circle_trajectory(64)
    ks = [curvature_3d(traj, t)[0] for t in range(2, 61)]
    assert max(ks) - min(ks) < 1e-9
    assert ks[0] > 0


def _direct_curvature_3d(p: np.ndarray, t: int) -> float:
    # Independent re-derivation: unit chord gradients differenced, over the
    # central chord length. Kept deliberately separate from the library code.
    fwd = p[t + 2] - p[t]
    bwd = p[t] - p[t - 2]
    t_fwd = fwd / np.linalg.norm(fwd)
    t_bwd = bwd / np.linalg.norm(bwd)
    return float(np.linalg.norm(t_fwd - t_bwd) / np.linalg.norm(p[t + 1] - p[t - 1]))


def test_curvature_3d_helix_matches_direct_evaluation():
    traj = helix_trajectory(128, r=1.0, pitch=0.5)
    ks = []
    for t in range(2, 125):
        k, flag = curvature_3d(traj, t)
        assert not flag
        assert k == pytest.approx(_direct_curvature_3d(traj.xyz, t), abs=1e-12)
        ks.append(k)
    assert max(ks) - min(ks) < 1e-9  # rotational symmetry of the helix


def test_curvature_3d_stationary_sentinel():
    xyz = np.zeros((9, 3))
    xyz[:, 1] = [0, 1, 2, 2, 2, 2, 2, 3, 4]
    traj = make_trajectory(xyz)
    k, flag = curvature_3d(traj, 4)
    assert k == 0.0 and flag


# --- aspect / curliness ------------------------------------------------------------


def test_aspect_2d_values():
    assert aspect_2d(WindowExtents(2, 2, 0, 4)) == (0.0, False)
    assert aspect_2d(WindowExtents(0, 3, 0, 3)) == (1.0, False)
    assert aspect_2d(WindowExtents(3, 0, 0, 3)) == (-1.0, False)
    assert aspect_2d(WindowExtents(0, 0, 5, 5)) == (0.0, True)


def test_aspect_3d_values():
    assert aspect_3d(WindowExtents(1, 1, 1, 3)) == (0.0, 0.0, 0.0, False)
    a1, a2, a3, flag = aspect_3d(WindowExtents(2, 2, 0, 4))
    assert (a1, a2, a3) == (0.0, -1.0, -1.0) and not flag
    assert aspect_3d(WindowExtents(1, 3, 1, 5)) == (0.5, -0.5, 0.0, False)


def test_aspect_3d_zero_denominator_sentinel():
    a1, a2, a3, flag = aspect_3d(WindowExtents(0, 0, 2, 2))
    assert a1 == 0.0 and flag  # dx + dy == 0 hits the sentinel
    assert (a2, a3) == (1.0, 1.0)


def test_curliness_straight_axis_aligned():
    assert curliness(WindowExtents(6, 0, 0, 6), dims=2) == (-1.0, False)
    assert curliness(WindowExtents(0, 0, 6, 6), dims=3) == (-1.0, False)


def test_curliness_diagonal_2d():
    w = WindowExtents(3, 3, 0, 3 * math.sqrt(2.0))
    c, flag = curliness(w, dims=2)
    assert c == pytest.approx(math.sqrt(2.0) - 2.0, abs=1e-12)
    assert not flag


def test_curliness_s_shape():
    c, flag = curliness(WindowExtents(2, 1, 0, 6), dims=2)
    assert c == pytest.approx(1.0) and not flag


def test_curliness_zero_extent_sentinel():
    assert curliness(WindowExtents(0, 0, 0, 0), dims=3) == (-1.0, True)


def test_window_extents_around():
    traj = straight_line(9, (1, 0, 0), step=2.0)
    w = WindowExtents.around(traj, 4)
    assert (w.dx, w.dy, w.dz) == (12.0, 0.0, 0.0)
    assert w.path_length == pytest.approx(12.0)


# --- slope / lineness ---------------------------------------------------------------


def test_slope_plus_x_forward_sense():
    traj = straight_line(10, (1, 0, 0))
    assert slope_3d(traj, 4) == (1.0, 0.0, 0.0, False)


def test_slope_body_diagonal():
    traj = straight_line(10, (1, 1, 1))
    l, m, n, flag = slope_3d(traj, 4)
    e = 1.0 / math.sqrt(3.0)
    assert (l, m, n) == pytest.approx((e, e, e), abs=1e-12)
    assert not flag


def test_slope_closed_loop_sentinel():
    # P(t+3) == P(t-3): six points around a loop returning to the start
    th = np.linspace(0.0, 2 * np.pi, 7)[:-1]
    ring = np.column_stack([np.cos(th), np.sin(th), np.zeros(6)])
    xyz = np.vstack([ring, ring[:4]])
    traj = make_trajectory(xyz)
    assert slope_3d(traj, 3) == (0.0, 0.0, 0.0, True)


def test_lineness_collinear_zero():
    traj = straight_line(12, (2, -1, 0.5))
    for t in range(3, 9):
        val, flag = lineness(traj, t)
        assert val == 0.0 and not flag


def test_lineness_single_bump():
    pts = np.zeros((7, 3))
    pts[:, 0] = np.arange(7.0)
    pts[3, 1] = 2.0
    traj = make_trajectory(pts)
    val, flag = lineness(traj, 3)
    assert val == pytest.approx(4.0 / 5.0)  # one of five interior points at d=2
    assert not flag


def test_lineness_matches_brute_force_on_arc(rng):
    traj = smooth_random_trajectory(rng, 24)
    p = traj.xyz
    for t in range(3, 21):
        val, flag = lineness(traj, t)
        assert not flag
        a, b = p[t - 3], p[t + 3]
        direction = (b - a) / np.linalg.norm(b - a)
        dists = []
        for q in p[t - 2 : t + 3]:
            rel = q - a
            dists.append(np.linalg.norm(rel - np.dot(rel, direction) * direction))
        assert val == pytest.approx(np.mean(np.square(dists)), rel=1e-12)


def test_lineness_degenerate_chord_sentinel():
    th = np.linspace(0.0, 2 * np.pi, 7)[:-1]
    ring = np.column_stack([np.cos(th), np.sin(th), np.zeros(6)])
    xyz = np.vstack([ring, ring[:4]])
    traj = make_trajectory(xyz)
    assert lineness(traj, 3) == (0.0, True)


# --- sequence extraction -------------------------------------------------------------


def test_extract_f7_straight_horizontal_row():
    traj = straight_line(16, (1, 0, 0))
    seq = extract_f7(traj)
    # direction (-1, 0), zero turning (1, 0), aspect -1, curliness -1, slope m 0
    assert np.allclose(seq.values[8], [-1, 0, 1, 0, -1, -1, 0], atol=1e-12)
    assert seq.dim is FeatureDim.F7


def test_extract_f7_length_and_padding():
    traj = circle_trajectory(40)
    seq = extract_f7(traj)
    assert len(seq) == 40
    assert np.array_equal(seq.values[0], seq.values[3])
    assert np.array_equal(seq.values[-1], seq.values[-4])


def test_extract_f7_requires_planar():
    with pytest.raises(ValidationError):
        extract_f7(helix_trajectory(32))


def test_extract_f7_matches_scalar_ops_on_circle():
    traj = circle_trajectory(48)
    seq = extract_f7(traj)
    for t in range(3, 45):
        c, s, _ = direction_2d(traj, t)
        assert seq.values[t, 0] == pytest.approx(c, abs=1e-12)
        assert seq.values[t, 1] == pytest.approx(s, abs=1e-12)
        cc, cs, _ = curvature_2d(traj, t)
        assert seq.values[t, 2] == pytest.approx(cc, abs=1e-12)
        assert seq.values[t, 3] == pytest.approx(cs, abs=1e-12)
    # direction cosine sweeps the full range smoothly
    assert seq.values[:, 0].min() < -0.99 and seq.values[:, 0].max() > 0.99


def test_extract_f12_straight_stroke_row():
    traj = straight_line(16, (1, 0, 0))
    seq = extract_f12(traj)
    assert np.allclose(
        seq.values[8], [-1, 0, 0, 0, -1, 0, -1, -1, 0, 1, 0, 0], atol=1e-12
    )
    assert bool(seq.flagged[8])  # A2 sentinel: dy = dz = 0


def test_extract_f12_helix_curvature_column_constant():
    traj = helix_trajectory(128)
    seq = extract_f12(traj)
    k = seq.values[3:-3, 3]
    assert k.max() - k.min() < 1e-9


def test_extract_f12_unit_norm_contracts(rng):
    for _ in range(10):
        traj = smooth_random_trajectory(rng, 50)
        seq = extract_f12(traj)
        rows = seq.values[~seq.flagged]
        dir_norm = np.linalg.norm(rows[:, 0:3], axis=1)
        slope_norm = np.linalg.norm(rows[:, 9:12], axis=1)
        assert np.max(np.abs(dir_norm - 1.0)) < 1e-12
        assert np.max(np.abs(slope_norm - 1.0)) < 1e-12


def test_extract_f12_matches_scalar_ops(rng):
    traj = smooth_random_trajectory(rng, 32)
    seq = extract_f12(traj)
    for t in range(3, 29):
        ca, cb, cg, _ = direction_3d(traj, t)
        k, _ = curvature_3d(traj, t)
        w = WindowExtents.around(traj, t)
        a1, a2, a3, _ = aspect_3d(w)
        c, _ = curliness(w, 3)
        line, _ = lineness(traj, t)
        l, m, n, _ = slope_3d(traj, t)
        assert np.allclose(
            seq.values[t], [ca, cb, cg, k, a1, a2, a3, c, line, l, m, n], atol=1e-12
        )


def test_extract_too_short_raises():
    with pytest.raises(TrajectoryTooShortError):
        extract_f12(straight_line(6))
    with pytest.raises(TrajectoryTooShortError):
        extract_f7(straight_line(6))


def test_sequence_length_matches_trajectory(rng):
    for n in (7, 8, 13, 64):
        traj = smooth_random_trajectory(rng, n)
        assert len(extract_f12(traj)) == n


# --- invariance properties -----------------------------------------------------------


def test_translation_invariance(rng):
    for _ in range(5):
        traj = smooth_random_trajectory(rng, 40)
        shifted = Trajectory(traj.xyz + np.array([212.0, -90.0, 33.0]), traj.times)
        a = extract_f12(traj).values
        b = extract_f12(shifted).values
        assert np.max(np.abs(a - b)) < 1e-9


@pytest.mark.parametrize("scale", [0.5, 2.0, 10.0])
def test_scale_covariance(rng, scale):
    for _ in range(5):
        traj = smooth_random_trajectory(rng, 40)
        scaled = Trajectory(traj.xyz * scale, traj.times)
        a = extract_f12(traj)
        b = extract_f12(scaled)
        keep = ~(a.flagged | b.flagged)
        invariant_cols = [0, 1, 2, 4, 5, 6, 7, 9, 10, 11]
        assert np.max(np.abs(a.values[keep][:, invariant_cols]
                             - b.values[keep][:, invariant_cols])) < 1e-9
        k_a, k_b = a.values[keep][:, 3], b.values[keep][:, 3]
        assert np.allclose(k_b, k_a / scale, rtol=1e-6)
        l_a, l_b = a.values[keep][:, 8], b.values[keep][:, 8]
        assert np.allclose(l_b, l_a * scale**2, rtol=1e-6)


def test_feature_value_ranges(rng):
    # aspects in [-1, 1]; curvature and lineness nonnegative; curliness >= -1
    for _ in range(20):
        seq = extract_f12(smooth_random_trajectory(rng, 48))
        v = seq.values
        assert np.all(v[:, 4:7] >= -1.0 - 1e-12) and np.all(v[:, 4:7] <= 1.0 + 1e-12)
        assert np.all(v[:, 3] >= 0.0)
        assert np.all(v[:, 8] >= 0.0)
        assert np.all(v[:, 7] >= -1.0 - 1e-9)


# --- curvature moments ----------------------------------------------------------------


def test_moments_straight_line_all_zero():
    vec = curvature_moments(straight_line(32, (1, 1, 0)))
    assert vec.dim is FeatureDim.MOMENTS6
    assert np.allclose(vec.values, 0.0, atol=1e-12)


def test_moments_constant_curvature_matches_integrals():
    # Circle: both the position and velocity curvature series are constant,
    # so M_j -> k / (j + 1) as n grows (integral of u^j on [0, 1]).
    n = 256
    traj = circle_trajectory(n, r=2.0)
    k_pos = curvature_3d(traj, 10)[0]
    vec = curvature_moments(traj)
    k_vel = vec.values[3]  # M_0 of a constant series equals the constant
    for j in range(3):
        assert vec.values[j] == pytest.approx(k_pos / (j + 1), rel=4.0 / n)
        assert vec.values[3 + j] == pytest.approx(k_vel / (j + 1), rel=4.0 / n)


def test_moments_reversal_preserves_m0():
    traj = helix_trajectory(64)
    rev = Trajectory(traj.xyz[::-1].copy(), traj.times)
    a = curvature_moments(traj).values
    b = curvature_moments(rev).values
    assert a[0] == pytest.approx(b[0], abs=1e-12)
    assert a[3] == pytest.approx(b[3], abs=1e-12)


def test_moments_too_short():
    with pytest.raises(TrajectoryTooShortError):
        curvature_moments(straight_line(8))


# --- misc ------------------------------------------------------------------------------


def test_feature_vector_validation():
    with pytest.raises(Exception):
        FeatureVector(np.zeros(5), FeatureDim.F7)


def test_dump_feature_table_round_trips_values():
    traj = circle_trajectory(16)
    seq = extract_f12(traj)
    text = dump_feature_table(seq)
    lines = text.strip().split("\n")
    assert len(lines) == 17
    first = lines[1].split("\t")
    assert float(first[0]) == seq.values[0, 0]
