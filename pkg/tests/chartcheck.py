"""Shared chart-oracle helpers for renderer tests.

The lat/lon chart encodes lon in R and lat in G, so a renderer can be checked
by comparing a rendered pixel against the analytic encoding of the direction
it should show. The encoding itself is discontinuous at the antimeridian and
degenerate at the poles (lon undefined), so random view configs are drawn with
rejection: any config that puts a checked direction within a small guard band
of those oracle singularities is redrawn. The guard protects the oracle, not
the renderer — sampling/rendering near the seam is covered by its own
continuity test.
"""

import math

import numpy as np

from tangi.geometry import Orientation, dirs_to_lonlat, orientation_matrix

GUARD_SEAM = math.radians(3.0)
GUARD_POLE = math.radians(87.0)

FORWARD = np.array([[1.0, 0.0, 0.0]])


def encode(lon: float, lat: float) -> tuple[float, float]:
    """Exact (R, G) chart values for a direction, before quantization."""
    return 255 * (lon + math.pi) / (2 * math.pi), 255 * (lat + math.pi / 2) / math.pi


def seam_distance(d) -> float:
    """Great-circle distance from a unit direction to the antimeridian arc.

    The arc is {u : u_y = 0, u_x <= 0}, whose endpoints are the poles. When
    the closest point is interior to the arc the distance is asin|d_y|;
    otherwise the closest point is a pole, handled by the pole guard anyway.
    """
    if abs(math.atan2(d[2], d[0])) >= math.pi / 2:
        return math.asin(min(1.0, abs(float(d[1]))))
    lat = math.asin(max(-1.0, min(1.0, float(d[2]))))
    return math.pi / 2 - abs(lat)


def oracle_safe(o: Orientation, dirs: np.ndarray, cone: float = 0.0) -> bool:
    """True when every rotated direction stays clear of the chart's seam/poles.

    `cone` widens the guards by an angular radius, for checks that read a
    small neighbourhood around each direction (e.g. a bilinear read between
    pixels) rather than a single ray: near the poles a tiny neighbourhood
    spans a huge longitude range, so seam clearance must be measured as a
    great-circle distance, not a longitude difference.
    """
    rotated = dirs @ orientation_matrix(o).T
    lat = np.arcsin(np.clip(rotated[:, 2], -1.0, 1.0))
    if not np.all(np.abs(lat) < GUARD_POLE - cone):
        return False
    return all(seam_distance(d) > GUARD_SEAM + cone for d in rotated)


def draw_configs(rng: np.random.Generator, n: int, dirs: np.ndarray = FORWARD, cone: float = 0.0):
    """n (Orientation, fov_h) configs whose checked dirs avoid oracle singularities."""
    out = []
    while len(out) < n:
        o = Orientation(
            yaw=rng.uniform(-math.pi, math.pi),
            pitch=rng.uniform(-math.pi / 2, math.pi / 2),
            roll=rng.uniform(-math.pi, math.pi),
        )
        fov = rng.uniform(math.radians(10), math.radians(160))
        if oracle_safe(o, dirs, cone):
            out.append((o, fov))
    return out


def read_bilinear(pixels: np.ndarray, x: float, y: float) -> np.ndarray:
    """Bilinear read of a rendered raster at a fractional pixel position."""
    x0, y0 = int(math.floor(x)), int(math.floor(y))
    fx, fy = x - x0, y - y0
    h, w = pixels.shape[:2]
    acc = np.zeros(pixels.shape[2], dtype=float)
    for dx, wx in ((0, 1 - fx), (1, fx)):
        for dy, wy in ((0, 1 - fy), (1, fy)):
            acc += wx * wy * pixels[min(h - 1, max(0, y0 + dy)), min(w - 1, max(0, x0 + dx))]
    return acc
