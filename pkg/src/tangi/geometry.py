"""Spherical coordinates, view rotations, and the projections used everywhere else.

Conventions (pinned; tests depend on them):
  - Right-handed world frame: +X points at (lon 0, lat 0), +Y at (lon +90deg,
    lat 0), +Z at the north pole.
  - Camera basis: forward=(1,0,0), right=(0,1,0), up=(0,0,1) in camera space.
  - Orientation is yaw/pitch/roll in radians, composed as
    R = Rz(yaw) @ Ry(-pitch) @ Rx(roll); positive yaw turns toward +lon,
    positive pitch looks up, roll is about the forward axis.
  - Longitude is normalized into [-pi, pi); latitude lies in [-pi/2, pi/2].
  - At the poles longitude is reported as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def wrap_lon(lon: float) -> float:
    """Normalize a longitude into [-pi, pi)."""
    return (lon + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True)
class LatLon:
    """A point on the unit sphere. lon in [-pi, pi), lat in [-pi/2, pi/2]."""

    lon: float
    lat: float

    def __post_init__(self):
        if not (math.isfinite(self.lon) and math.isfinite(self.lat)):
            raise ValueError("non-finite LatLon")
        if abs(self.lat) > math.pi / 2:
            raise ValueError(f"latitude {self.lat} outside [-pi/2, pi/2]")
        object.__setattr__(self, "lon", wrap_lon(self.lon))


@dataclass(frozen=True)
class Orientation:
    """Global view rotation: yaw about +Z (toward +lon), pitch up, roll about forward."""

    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0

    def __post_init__(self):
        for a in (self.yaw, self.pitch, self.roll):
            if not math.isfinite(a):
                raise ValueError("non-finite orientation angle")


@dataclass(frozen=True)
class PerspectiveSpec:
    """Pinhole view geometry. Principal point sits at the pixel-grid center
    ((w-1)/2, (h-1)/2); the focal length in pixels follows from the horizontal
    field of view, which must stay strictly below pi."""

    out_w: int
    out_h: int
    fov_h: float

    def __post_init__(self):
        if self.out_w < 2 or self.out_h < 2:
            raise ValueError("output size must be at least 2x2 pixels")
        if not (0.0 < self.fov_h < math.pi):
            raise ValueError(f"horizontal fov {self.fov_h} outside (0, pi)")

    @property
    def cx(self) -> float:
        return (self.out_w - 1) / 2.0

    @property
    def cy(self) -> float:
        return (self.out_h - 1) / 2.0

    @property
    def focal_px(self) -> float:
        return self.cx / math.tan(self.fov_h / 2.0)


def latlon_to_dir(p: LatLon) -> np.ndarray:
    """Unit direction vector for a lon/lat point."""
    cl = math.cos(p.lat)
    return np.array([cl * math.cos(p.lon), cl * math.sin(p.lon), math.sin(p.lat)])


def dir_to_latlon(d: np.ndarray) -> LatLon:
    """Inverse of latlon_to_dir. Rejects vectors whose norm is off by > 1e-6."""
    d = np.asarray(d, dtype=float)
    n = float(np.linalg.norm(d))
    if abs(n - 1.0) > 1e-6:
        raise ValueError(f"direction is not unit length (norm {n})")
    lat = math.asin(min(1.0, max(-1.0, float(d[2]) / n)))
    if abs(lat) >= math.pi / 2 - 1e-12:
        return LatLon(0.0, math.copysign(math.pi / 2, lat))
    return LatLon(math.atan2(float(d[1]), float(d[0])), lat)


def lonlat_to_dirs(lon: np.ndarray, lat: np.ndarray) -> np.ndarray:
    """Vectorized latlon_to_dir; stacks to shape lon.shape + (3,)."""
    cl = np.cos(lat)
    return np.stack([cl * np.cos(lon), cl * np.sin(lon), np.sin(lat)], axis=-1)


def dirs_to_lonlat(dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized dir_to_latlon for already-normalized direction arrays (..., 3)."""
    lon = np.arctan2(dirs[..., 1], dirs[..., 0])
    lat = np.arcsin(np.clip(dirs[..., 2], -1.0, 1.0))
    return lon, lat


def _rx(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _ry(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _rz(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def orientation_matrix(o: Orientation) -> np.ndarray:
    """3x3 rotation taking camera-space directions to world space."""
    return _rz(o.yaw) @ _ry(-o.pitch) @ _rx(o.roll)


def gnomonic_ray(spec: PerspectiveSpec, o: Orientation, x: float, y: float) -> np.ndarray:
    """World-space unit ray through output pixel (x, y); fractional coords allowed."""
    cam = np.array([spec.focal_px, x - spec.cx, spec.cy - y])
    cam /= np.linalg.norm(cam)
    return orientation_matrix(o) @ cam


def gnomonic_rays(spec: PerspectiveSpec, o: Orientation, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized gnomonic_ray over broadcastable pixel-coordinate arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    shape = np.broadcast(x, y).shape
    cam = np.stack(
        [
            np.broadcast_to(np.float64(spec.focal_px), shape),
            np.broadcast_to(x - spec.cx, shape),
            np.broadcast_to(spec.cy - y, shape),
        ],
        axis=-1,
    )
    cam /= np.linalg.norm(cam, axis=-1, keepdims=True)
    return cam @ orientation_matrix(o).T


def gnomonic_project(spec: PerspectiveSpec, o: Orientation, d: np.ndarray) -> tuple[float, float, bool]:
    """Map a world direction to pixel coords. visible=False behind the view plane;
    in-front results may still land outside the image rectangle (caller clips)."""
    c = orientation_matrix(o).T @ np.asarray(d, dtype=float)
    if c[0] <= 1e-9:
        return 0.0, 0.0, False
    f = spec.focal_px
    return spec.cx + f * float(c[1]) / float(c[0]), spec.cy - f * float(c[2]) / float(c[0]), True


def gnomonic_project_dirs(
    spec: PerspectiveSpec, o: Orientation, dirs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized gnomonic_project over an array of directions (..., 3)."""
    c = np.asarray(dirs, dtype=float) @ orientation_matrix(o)
    visible = c[..., 0] > 1e-9
    fwd = np.where(visible, c[..., 0], 1.0)
    x = spec.cx + spec.focal_px * c[..., 1] / fwd
    y = spec.cy - spec.focal_px * c[..., 2] / fwd
    return x, y, visible


# Stereographic "little planet": nadir at image center, lat 0 on the horizon circle.
# Radii that would reach within (1 - this) * pi/2 of the zenith are clipped.
ZENITH_GUARD = 1e-6


def little_planet_latlon(
    out_size: int, horizon_radius_px: float, spin: float, x: float, y: float
) -> LatLon | None:
    """Lon/lat seen at pixel (x, y) of a little-planet render, or None outside
    the zenith guard."""
    if out_size < 2:
        raise ValueError("output size must be at least 2 pixels")
    if horizon_radius_px <= 0:
        raise ValueError("horizon radius must be positive")
    c = (out_size - 1) / 2.0
    dx, dy = x - c, y - c
    r = math.hypot(dx, dy)
    lat = 2.0 * math.atan(r / horizon_radius_px) - math.pi / 2
    if lat > math.pi / 2 * (1.0 - ZENITH_GUARD):
        return None
    if r == 0.0:
        return LatLon(wrap_lon(spin), -math.pi / 2)
    return LatLon(wrap_lon(math.atan2(dy, dx) + spin), lat)


def little_planet_lonlat_grid(
    out_size: int, horizon_radius_px: float, spin: float, x: np.ndarray, y: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized little_planet_latlon: returns (lon, lat, inside) arrays."""
    if out_size < 2:
        raise ValueError("output size must be at least 2 pixels")
    if horizon_radius_px <= 0:
        raise ValueError("horizon radius must be positive")
    c = (out_size - 1) / 2.0
    dx = np.asarray(x, dtype=float) - c
    dy = np.asarray(y, dtype=float) - c
    r = np.hypot(dx, dy)
    lat = 2.0 * np.arctan(r / horizon_radius_px) - math.pi / 2
    inside = lat <= math.pi / 2 * (1.0 - ZENITH_GUARD)
    lon = (np.arctan2(dy, dx) + spin + math.pi) % TWO_PI - math.pi
    return lon, np.clip(lat, -math.pi / 2, math.pi / 2), inside
