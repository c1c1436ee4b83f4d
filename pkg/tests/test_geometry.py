"""Coordinate conventions, rotations, and projections.

Expected values here were frozen from independent hand/numeric derivations
(literal rotation matrices multiplied inline, closed-form inversions) rather
than from the implementation.
"""

import math

import numpy as np
import pytest

from tangi.geometry import (
    LatLon,
    Orientation,
    PerspectiveSpec,
    dir_to_latlon,
    dirs_to_lonlat,
    gnomonic_project,
    gnomonic_project_dirs,
    gnomonic_ray,
    gnomonic_rays,
    latlon_to_dir,
    little_planet_latlon,
    little_planet_lonlat_grid,
    lonlat_to_dirs,
    orientation_matrix,
    wrap_lon,
)

SQ2 = math.sqrt(2.0) / 2.0


def test_latlon_axes():
    assert np.allclose(latlon_to_dir(LatLon(0.0, 0.0)), [1, 0, 0], atol=1e-15)
    assert np.allclose(latlon_to_dir(LatLon(math.pi / 2, 0.0)), [0, 1, 0], atol=1e-15)
    # any longitude at the pole lands on +Z
    assert np.allclose(latlon_to_dir(LatLon(2.3, math.pi / 2)), [0, 0, 1], atol=1e-15)


def test_latlon_normalizes_lon_and_rejects_bad_lat():
    assert LatLon(math.pi, 0.0).lon == pytest.approx(-math.pi)
    assert LatLon(3 * math.pi / 2, 0.0).lon == pytest.approx(-math.pi / 2)
    with pytest.raises(ValueError):
        LatLon(0.0, 1.6)
    with pytest.raises(ValueError):
        LatLon(float("nan"), 0.0)


def test_dir_to_latlon_pole_convention_and_axes():
    p = dir_to_latlon(np.array([0.0, 0.0, 1.0]))
    assert p.lon == 0.0 and p.lat == pytest.approx(math.pi / 2)
    q = dir_to_latlon(np.array([0.0, -1.0, 0.0]))
    assert q.lon == pytest.approx(-math.pi / 2) and q.lat == pytest.approx(0.0)


def test_dir_to_latlon_rejects_non_unit():
    with pytest.raises(ValueError):
        dir_to_latlon(np.array([0.0, 0.0, 1.1]))


def test_latlon_round_trip_specific():
    p = LatLon(1.1, -0.3)
    q = dir_to_latlon(latlon_to_dir(p))
    assert abs(q.lon - p.lon) < 1e-12 and abs(q.lat - p.lat) < 1e-12


def test_latlon_round_trip_random():
    rng = np.random.default_rng(7)
    lon = rng.uniform(-math.pi, math.pi, 10000)
    lat = rng.uniform(-math.pi / 2, math.pi / 2, 10000)
    for i in range(0, 10000, 997):  # scalar path spot checks
        p = LatLon(float(lon[i]), float(lat[i]))
        q = dir_to_latlon(latlon_to_dir(p))
        assert abs(q.lon - p.lon) < 1e-12 and abs(q.lat - p.lat) < 1e-12
    dirs = lonlat_to_dirs(lon, lat)
    lon2, lat2 = dirs_to_lonlat(dirs)
    assert np.max(np.abs(wrap_lon_arr(lon2 - lon))) < 1e-12
    assert np.max(np.abs(lat2 - lat)) < 1e-12


def wrap_lon_arr(d):
    return (d + math.pi) % (2 * math.pi) - math.pi


def test_unit_vec_round_trip_random():
    rng = np.random.default_rng(8)
    v = rng.normal(size=(10000, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    lat = np.arcsin(np.clip(v[:, 2], -1, 1))
    keep = np.abs(lat) < math.pi / 2 - 1e-6
    v = v[keep]
    lon2, lat2 = dirs_to_lonlat(v)
    back = lonlat_to_dirs(lon2, lat2)
    assert np.max(np.abs(back - v)) < 1e-12


def test_orientation_matrix_quarter_turns():
    fwd = np.array([1.0, 0.0, 0.0])
    assert np.allclose(orientation_matrix(Orientation(yaw=math.pi / 2)) @ fwd, [0, 1, 0], atol=1e-15)
    assert np.allclose(orientation_matrix(Orientation(pitch=math.pi / 2)) @ fwd, [0, 0, 1], atol=1e-15)


def test_orientation_matrix_yaw_pitch_composition():
    # Oracle: compose literal Rz(pi/2) and Ry(-pi/4) matrices written out by hand.
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    rz = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])
    oracle = rz @ ry @ np.array([1.0, 0.0, 0.0])
    got = orientation_matrix(Orientation(yaw=math.pi / 2, pitch=math.pi / 4)) @ np.array([1.0, 0.0, 0.0])
    assert np.allclose(got, oracle, atol=1e-15)
    assert np.allclose(got, [0.0, SQ2, SQ2], atol=1e-12)


def test_orientation_matrix_orthonormal():
    rng = np.random.default_rng(9)
    for _ in range(200):
        o = Orientation(*rng.uniform(-math.pi, math.pi, 3))
        m = orientation_matrix(o)
        assert np.max(np.abs(m.T @ m - np.eye(3))) < 1e-12
        assert abs(np.linalg.det(m) - 1.0) < 1e-12


def test_perspective_spec_validation():
    with pytest.raises(ValueError):
        PerspectiveSpec(1, 100, math.pi / 2)
    with pytest.raises(ValueError):
        PerspectiveSpec(100, 100, math.pi)
    with pytest.raises(ValueError):
        PerspectiveSpec(100, 100, 0.0)
    spec = PerspectiveSpec(101, 51, math.pi / 2)
    assert spec.cx == 50.0 and spec.cy == 25.0
    assert spec.focal_px == pytest.approx(50.0)


def test_gnomonic_ray_center_and_45deg():
    spec = PerspectiveSpec(101, 101, math.pi / 2)  # focal_px = 50
    o = Orientation()
    assert np.allclose(gnomonic_ray(spec, o, spec.cx, spec.cy), [1, 0, 0], atol=1e-15)
    # 50 px right of center at focal 50 -> 45 degrees toward +Y
    assert np.allclose(gnomonic_ray(spec, o, spec.cx + 50, spec.cy), [SQ2, SQ2, 0], atol=1e-12)


def test_gnomonic_ray_yaw_equivariance():
    spec = PerspectiveSpec(64, 48, 1.2)
    rng = np.random.default_rng(10)
    for _ in range(50):
        x = rng.uniform(0, spec.out_w - 1)
        y = rng.uniform(0, spec.out_h - 1)
        psi = rng.uniform(-math.pi, math.pi)
        base = gnomonic_ray(spec, Orientation(), x, y)
        rot = orientation_matrix(Orientation(yaw=psi)) @ base
        assert np.allclose(gnomonic_ray(spec, Orientation(yaw=psi), x, y), rot, atol=1e-12)


def test_gnomonic_project_axis_and_behind():
    spec = PerspectiveSpec(200, 100, 1.0)
    o = Orientation(yaw=0.4, pitch=-0.2, roll=0.1)
    fwd = orientation_matrix(o) @ np.array([1.0, 0.0, 0.0])
    x, y, vis = gnomonic_project(spec, o, fwd)
    assert vis and x == pytest.approx(spec.cx, abs=1e-9) and y == pytest.approx(spec.cy, abs=1e-9)
    _, _, vis = gnomonic_project(spec, o, -fwd)
    assert not vis


def test_gnomonic_round_trip_grid():
    rng = np.random.default_rng(11)
    for _ in range(100):
        fov = rng.uniform(math.radians(10), math.radians(160))
        spec = PerspectiveSpec(int(rng.integers(16, 256)), int(rng.integers(16, 256)), fov)
        o = Orientation(*rng.uniform(-math.pi, math.pi, 3))
        gx, gy = np.meshgrid(
            np.linspace(0, spec.out_w - 1, 33), np.linspace(0, spec.out_h - 1, 33)
        )
        rays = gnomonic_rays(spec, o, gx, gy)
        x2, y2, vis = gnomonic_project_dirs(spec, o, rays)
        assert vis.all()
        assert np.max(np.abs(x2 - gx)) < 1e-9
        assert np.max(np.abs(y2 - gy)) < 1e-9


def test_gnomonic_scalar_vector_agree():
    spec = PerspectiveSpec(33, 21, 0.9)
    o = Orientation(0.3, 0.2, -0.7)
    rng = np.random.default_rng(12)
    xs = rng.uniform(0, spec.out_w - 1, 20)
    ys = rng.uniform(0, spec.out_h - 1, 20)
    batch = gnomonic_rays(spec, o, xs, ys)
    for i in range(20):
        assert np.allclose(gnomonic_ray(spec, o, xs[i], ys[i]), batch[i], atol=1e-14)


def test_little_planet_center_horizon_and_derived_radius():
    size, h = 201, 60.0
    c = (size - 1) / 2
    p = little_planet_latlon(size, h, 0.0, c, c)
    assert p.lon == 0.0 and p.lat == pytest.approx(-math.pi / 2)
    q = little_planet_latlon(size, h, 0.0, c + h, c)
    assert q.lon == pytest.approx(0.0, abs=1e-12) and q.lat == pytest.approx(0.0, abs=1e-12)
    # Oracle: bisect lat(r) = 2 atan(r/h) - pi/2 for lat = pi/4.
    lo, hi = 0.0, 100 * h
    for _ in range(200):
        mid = (lo + hi) / 2
        if 2 * math.atan(mid / h) - math.pi / 2 < math.pi / 4:
            lo = mid
        else:
            hi = mid
    r_oracle = (lo + hi) / 2
    assert r_oracle == pytest.approx(h * math.tan(3 * math.pi / 8), rel=1e-9)
    got = little_planet_latlon(size, h, 0.0, c + r_oracle, c)
    assert got.lat == pytest.approx(math.pi / 4, abs=1e-9)


def test_little_planet_spin_and_outside():
    size, h = 101, 20.0
    c = (size - 1) / 2
    p = little_planet_latlon(size, h, math.pi / 2, c + h, c)
    assert p.lon == pytest.approx(math.pi / 2)
    # far enough out that lat would pass the zenith guard
    assert little_planet_latlon(size, h, 0.0, c + 1e9, c) is None
    with pytest.raises(ValueError):
        little_planet_latlon(1, h, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        little_planet_latlon(size, 0.0, 0.0, c, c)


def test_little_planet_horizon_band():
    size, h = 401, 130.0
    c = (size - 1) / 2
    ang = np.linspace(0, 2 * math.pi, 720, endpoint=False)
    bound = 2 * math.atan(1 / (2 * h))
    for r in (h - 0.5, h + 0.5):
        for a in ang[::37]:
            p = little_planet_latlon(size, h, 0.0, c + r * math.cos(a), c + r * math.sin(a))
            assert abs(p.lat) <= bound + 1e-12


def test_little_planet_grid_matches_scalar():
    size, h, spin = 51, 14.0, 0.7
    gx, gy = np.meshgrid(np.arange(size, dtype=float), np.arange(size, dtype=float))
    lon, lat, inside = little_planet_lonlat_grid(size, h, spin, gx, gy)
    rng = np.random.default_rng(13)
    for _ in range(40):
        i, j = rng.integers(0, size, 2)
        p = little_planet_latlon(size, h, spin, float(gx[i, j]), float(gy[i, j]))
        if p is None:
            assert not inside[i, j]
        else:
            assert inside[i, j]
            assert abs(wrap_lon(lon[i, j] - p.lon)) < 1e-12
            assert abs(lat[i, j] - p.lat) < 1e-12
