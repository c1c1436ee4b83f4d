"""Equirectangular sampling and the pixel renderers.

An equirectangular pixel (u, v) has its center at
lon = 2*pi*(u+0.5)/width - pi, lat = pi/2 - pi*(v+0.5)/height.
Sampling is bilinear with longitude wrapping across the seam and latitude
clamping at the first/last row. Renderers supersample on an n x n grid per
output pixel and average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import pngio
from .geometry import (
    LatLon,
    Orientation,
    PerspectiveSpec,
    dirs_to_lonlat,
    gnomonic_rays,
    latlon_to_dir,
    little_planet_lonlat_grid,
    orientation_matrix,
)

TWO_PI = 2.0 * math.pi

# renderers process at most this many supersampled pixels per chunk
_CHUNK_BUDGET = 2_000_000


@dataclass
class EquirectImage:
    """RGBA8 panorama whose pixel grid spans lon [-180, 180) x lat [-90, 90]."""

    pixels: np.ndarray  # (H, W, 4) uint8

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 4 or self.pixels.dtype != np.uint8:
            raise ValueError("EquirectImage needs an (H, W, 4) uint8 array")
        if self.width < 2 or self.height < 1:
            raise ValueError("equirectangular image must be at least 2x1 pixels")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def nonstandard_aspect(self) -> bool:
        """True when the source is not (within 2 px) a 2:1 panorama."""
        return abs(self.width - 2 * self.height) > 2

    @classmethod
    def load(cls, source) -> "EquirectImage":
        return cls(pngio.load_rgba(source))

    @classmethod
    def decode(cls, data: bytes) -> "EquirectImage":
        return cls(pngio.decode_rgba(data))


@dataclass
class RasterImage:
    """Plain RGBA8 raster; alpha carries polygon clipping for non-rectangular faces."""

    pixels: np.ndarray  # (H, W, 4) uint8

    def __post_init__(self):
        self.pixels = np.asarray(self.pixels)
        if self.pixels.ndim != 3 or self.pixels.shape[2] != 4 or self.pixels.dtype != np.uint8:
            raise ValueError("RasterImage needs an (H, W, 4) uint8 array")
        if self.width * self.height == 0:
            raise ValueError("empty raster")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def save_png(self, path) -> None:
        pngio.save_png(self.pixels, path)

    def encode_png(self) -> bytes:
        return pngio.encode_png(self.pixels)


@dataclass(frozen=True)
class SamplingConfig:
    """n x n supersampling grid per output pixel; filtering is always bilinear."""

    supersample: int = 2

    def __post_init__(self):
        if not 1 <= self.supersample <= 8:
            raise ValueError("supersample must be in [1, 8]")


@dataclass(frozen=True)
class FacePlaneSpec:
    """A polygon on a plane in model space, ready to rasterize.

    center is the plane origin (the face centroid for polyhedron faces);
    e1/e2 are an orthonormal in-plane basis; polygon2d holds the face
    vertices in (e1, e2) coordinates, counterclockwise.
    """

    center: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    polygon2d: np.ndarray  # (N, 2)
    px_per_unit: float

    def __post_init__(self):
        for name in ("center", "e1", "e2"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        object.__setattr__(self, "polygon2d", np.asarray(self.polygon2d, dtype=float))
        if abs(np.linalg.norm(self.e1) - 1) > 1e-12 or abs(np.linalg.norm(self.e2) - 1) > 1e-12:
            raise ValueError("e1/e2 must be unit vectors")
        if abs(float(self.e1 @ self.e2)) > 1e-12:
            raise ValueError("e1/e2 must be orthogonal")
        if self.polygon2d.ndim != 2 or self.polygon2d.shape[0] < 3 or self.polygon2d.shape[1] != 2:
            raise ValueError("polygon2d needs at least 3 (s, t) vertices")
        if self.px_per_unit <= 0:
            raise ValueError("px_per_unit must be positive")
        poly = self.polygon2d
        nxt = np.roll(poly, -1, axis=0)
        prv = np.roll(poly, 1, axis=0)
        cross = (nxt[:, 0] - poly[:, 0]) * (poly[:, 1] - prv[:, 1]) - (
            nxt[:, 1] - poly[:, 1]
        ) * (poly[:, 0] - prv[:, 0])
        # counterclockwise convex ring: every turn is a left turn (or straight)
        if np.any(cross > 1e-12):
            raise ValueError("polygon2d must be convex and counterclockwise")

    @property
    def area(self) -> float:
        poly = self.polygon2d
        nxt = np.roll(poly, -1, axis=0)
        return 0.5 * float(np.sum(poly[:, 0] * nxt[:, 1] - nxt[:, 0] * poly[:, 1]))


@dataclass(frozen=True)
class GraticuleStyle:
    """Dotted coordinate grid + footprint styling for the mini-map."""

    spacing_deg: float = 30.0
    dot_on: int = 2
    dot_off: int = 2
    graticule_rgba: tuple = (255, 255, 255, 255)
    footprint_rgba: tuple = (255, 128, 0, 255)
    marker_rgba: tuple = (255, 0, 0, 255)

    def __post_init__(self):
        if not 5.0 <= self.spacing_deg <= 90.0:
            raise ValueError("graticule spacing must be in [5, 90] degrees")
        if self.dot_on < 1 or self.dot_off < 0:
            raise ValueError("bad dot pattern")


def sample_bilinear_grid(img: EquirectImage, lon: np.ndarray, lat: np.ndarray) -> np.ndarray:
    """Bilinear RGBA (float64) at arrays of lon/lat; wraps lon, clamps lat."""
    w, h = img.width, img.height
    uf = (np.asarray(lon) + math.pi) * (w / TWO_PI) - 0.5
    vf = (math.pi / 2 - np.asarray(lat)) * (h / math.pi) - 0.5
    u0 = np.floor(uf).astype(np.int64)
    v0 = np.floor(vf).astype(np.int64)
    fu = (uf - u0)[..., None]
    fv = (vf - v0)[..., None]
    u0w, u1w = u0 % w, (u0 + 1) % w
    v0c = np.clip(v0, 0, h - 1)
    v1c = np.clip(v0 + 1, 0, h - 1)
    px = img.pixels.astype(np.float64)
    top = px[v0c, u0w] * (1 - fu) + px[v0c, u1w] * fu
    bot = px[v1c, u0w] * (1 - fu) + px[v1c, u1w] * fu
    return top * (1 - fv) + bot * fv


def sample_bilinear(img: EquirectImage, p: LatLon) -> tuple[int, int, int, int]:
    """Bilinear RGBA at one point, rounded to 8-bit."""
    rgba = sample_bilinear_grid(img, np.array(p.lon), np.array(p.lat))
    return tuple(int(c) for c in np.rint(rgba).astype(np.uint8))


def make_latlon_chart(width: int, height: int) -> EquirectImage:
    """Synthetic panorama encoding lon in R and lat in G (test oracle image)."""
    if width < 2 or height < 1:
        raise ValueError("chart must be at least 2x1 pixels")
    u = np.arange(width)
    v = np.arange(height)
    lon = TWO_PI * (u + 0.5) / width - math.pi
    lat = math.pi / 2 - math.pi * (v + 0.5) / height
    r = np.rint(255 * (lon + math.pi) / TWO_PI).astype(np.uint8)
    g = np.rint(255 * (lat + math.pi / 2) / math.pi).astype(np.uint8)
    px = np.zeros((height, width, 4), dtype=np.uint8)
    px[:, :, 0] = r[None, :]
    px[:, :, 1] = g[:, None]
    px[:, :, 3] = 255
    return EquirectImage(px)


def _subpixel_coords(n_out: int, ss: int) -> np.ndarray:
    """Centers of the ss subsamples per pixel, as one flat coordinate array."""
    return (np.arange(n_out * ss) + 0.5) / ss - 0.5


def render_perspective(
    img: EquirectImage,
    spec: PerspectiveSpec,
    o: Orientation = Orientation(),
    cfg: SamplingConfig = SamplingConfig(),
) -> RasterImage:
    """Gnomonic (straight-line-preserving) view of the panorama."""
    ss = cfg.supersample
    xs = _subpixel_coords(spec.out_w, ss)
    ys = _subpixel_coords(spec.out_h, ss)
    out = np.empty((spec.out_h, spec.out_w, 4), dtype=np.uint8)
    rows_per_chunk = max(1, _CHUNK_BUDGET // (len(xs) * ss))
    for y0 in range(0, spec.out_h, rows_per_chunk):
        y1 = min(spec.out_h, y0 + rows_per_chunk)
        yy = ys[y0 * ss : y1 * ss]
        rays = gnomonic_rays(spec, o, xs[None, :], yy[:, None])
        lon, lat = dirs_to_lonlat(rays)
        rgba = sample_bilinear_grid(img, lon, lat)
        rgba = rgba.reshape(y1 - y0, ss, spec.out_w, ss, 4).mean(axis=(1, 3))
        out[y0:y1] = np.rint(rgba).astype(np.uint8)
    out[:, :, 3] = 255
    return RasterImage(out)


def render_little_planet(
    img: EquirectImage,
    out_size: int,
    horizon_radius_px: float,
    spin: float = 0.0,
    cfg: SamplingConfig = SamplingConfig(),
) -> RasterImage:
    """Stereographic view centered on the nadir; pixels past the zenith guard are
    transparent."""
    ss = cfg.supersample
    coords = _subpixel_coords(out_size, ss)
    lon, lat, inside = little_planet_lonlat_grid(
        out_size, horizon_radius_px, spin, coords[None, :], coords[:, None]
    )
    rgba = sample_bilinear_grid(img, lon, lat)
    rgba[~inside] = 0.0
    rgba = rgba.reshape(out_size, ss, out_size, ss, 4)
    inside = inside.reshape(out_size, ss, out_size, ss)
    frac = inside.mean(axis=(1, 3))
    color = rgba.sum(axis=(1, 3))
    n_inside = np.maximum(inside.sum(axis=(1, 3)), 1)[..., None]
    out = np.rint(color / n_inside).astype(np.uint8)
    out[:, :, 3] = np.rint(255 * frac).astype(np.uint8)
    return RasterImage(out)


def _inside_convex(poly: np.ndarray, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Half-plane test against a counterclockwise convex ring (boundary counts in)."""
    inside = np.ones(np.broadcast(s, t).shape, dtype=bool)
    for i in range(len(poly)):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % len(poly)]
        inside &= (bx - ax) * (t - ay) - (by - ay) * (s - ax) >= 0
    return inside


def render_face(
    img: EquirectImage,
    face: FacePlaneSpec,
    o: Orientation = Orientation(),
    cfg: SamplingConfig = SamplingConfig(),
) -> RasterImage:
    """Project the panorama onto one planar polygon.

    The raster covers polygon2d's bounding box at px_per_unit; pixel (px, py)
    centers map to plane coords s = smin + (px+0.5)/ppu, t = tmax - (py+0.5)/ppu
    (t points up). Alpha is the supersampled polygon coverage.
    """
    if face.area <= 1e-12:
        raise ValueError("degenerate face (zero area)")
    ppu = face.px_per_unit
    smin, tmin = face.polygon2d.min(axis=0)
    smax, tmax = face.polygon2d.max(axis=0)
    out_w = max(1, math.ceil((smax - smin) * ppu - 1e-9))
    out_h = max(1, math.ceil((tmax - tmin) * ppu - 1e-9))
    ss = cfg.supersample
    s = smin + (_subpixel_coords(out_w, ss) + 0.5) / ppu
    m = orientation_matrix(o)
    out = np.empty((out_h, out_w, 4), dtype=np.uint8)
    rows_per_chunk = max(1, _CHUNK_BUDGET // (len(s) * ss))
    for y0 in range(0, out_h, rows_per_chunk):
        y1 = min(out_h, y0 + rows_per_chunk)
        t = tmax - (_subpixel_coords(out_h, ss)[y0 * ss : y1 * ss] + 0.5) / ppu
        inside = _inside_convex(face.polygon2d, s[None, :], t[:, None])
        p3 = (
            face.center[None, None, :]
            + s[None, :, None] * face.e1[None, None, :]
            + t[:, None, None] * face.e2[None, None, :]
        )
        p3 /= np.linalg.norm(p3, axis=-1, keepdims=True)
        lon, lat = dirs_to_lonlat(p3 @ m.T)
        rgba = sample_bilinear_grid(img, lon, lat)
        rgba[~inside] = 0.0
        rgba = rgba.reshape(y1 - y0, ss, out_w, ss, 4)
        blk = inside.reshape(y1 - y0, ss, out_w, ss)
        n_in = np.maximum(blk.sum(axis=(1, 3)), 1)[..., None]
        chunk = np.rint(rgba.sum(axis=(1, 3)) / n_in).astype(np.uint8)
        chunk[:, :, 3] = np.rint(255 * blk.mean(axis=(1, 3))).astype(np.uint8)
        out[y0:y1] = chunk
    return RasterImage(out)


def compute_footprint(
    spec: PerspectiveSpec, o: Orientation, samples_per_edge: int = 64
) -> list[list[LatLon]]:
    """Lon/lat trace of the view-frame boundary, split at antimeridian crossings."""
    if samples_per_edge < 2:
        raise ValueError("samples_per_edge must be >= 2")
    w, h = spec.out_w - 1, spec.out_h - 1
    corners = [(0.0, 0.0), (w, 0.0), (w, h), (0.0, h), (0.0, 0.0)]
    xs, ys = [], []
    for (x0, y0), (x1, y1) in zip(corners[:-1], corners[1:]):
        ts = np.linspace(0.0, 1.0, samples_per_edge)[:-1]
        xs.append(x0 + ts * (x1 - x0))
        ys.append(y0 + ts * (y1 - y0))
    xs = np.concatenate(xs + [np.array([0.0])])
    ys = np.concatenate(ys + [np.array([0.0])])
    lon, lat = dirs_to_lonlat(gnomonic_rays(spec, o, xs, ys))
    segments: list[list[LatLon]] = [[]]
    for i in range(len(lon)):
        if segments[-1] and abs(lon[i] - segments[-1][-1].lon) > math.pi:
            segments.append([])
        segments[-1].append(LatLon(float(lon[i]), float(np.clip(lat[i], -math.pi / 2, math.pi / 2))))
    return [s for s in segments if len(s) >= 2]


def _lonlat_to_thumb(lon: float, lat: float, w: int, h: int) -> tuple[int, int]:
    u = math.floor((lon + math.pi) * (w / TWO_PI) - 0.5 + 0.5) % w
    v = min(h - 1, max(0, math.floor((math.pi / 2 - lat) * (h / math.pi) - 0.5 + 0.5)))
    return u, v


def _draw_dotted_col(px: np.ndarray, x: int, on: int, off: int, rgba) -> None:
    idx = np.arange(px.shape[0])
    px[idx[(idx % (on + off)) < on], x] = rgba


def _draw_dotted_row(px: np.ndarray, y: int, on: int, off: int, rgba) -> None:
    idx = np.arange(px.shape[1])
    px[y, idx[(idx % (on + off)) < on]] = rgba


def _draw_polyline(px: np.ndarray, pts: list[tuple[float, float]], rgba) -> None:
    h, w = px.shape[:2]
    for (x0, y0), (x1, y1) in zip(pts[:-1], pts[1:]):
        n = max(2, int(2 * max(abs(x1 - x0), abs(y1 - y0))) + 1)
        xs = np.rint(np.linspace(x0, x1, n)).astype(int) % w
        ys = np.clip(np.rint(np.linspace(y0, y1, n)).astype(int), 0, h - 1)
        px[ys, xs] = rgba


def render_minimap(
    img: EquirectImage,
    spec: PerspectiveSpec,
    o: Orientation,
    map_width_px: int,
    style: GraticuleStyle = GraticuleStyle(),
) -> RasterImage:
    """2:1 panorama thumbnail with dotted graticule, view footprint, and a
    cross marker on the view center."""
    if map_width_px < 64:
        raise ValueError("map_width_px must be >= 64")
    w, h = map_width_px, round(map_width_px / 2)
    px = pngio.box_resize(img.pixels, w, h)
    px[:, :, 3] = 255

    step = style.spacing_deg
    k = 1
    while k * step < 180 - 1e-9:  # interior meridians, mirrored about lon 0
        for lon_deg in (-k * step, k * step):
            x, _ = _lonlat_to_thumb(math.radians(lon_deg), 0.0, w, h)
            _draw_dotted_col(px, x, style.dot_on, style.dot_off, style.graticule_rgba)
        k += 1
    x, _ = _lonlat_to_thumb(0.0, 0.0, w, h)
    _draw_dotted_col(px, x, style.dot_on, style.dot_off, style.graticule_rgba)
    k = 1
    while k * step < 90 - 1e-9:
        for lat_deg in (-k * step, k * step):
            _, y = _lonlat_to_thumb(0.0, math.radians(lat_deg), w, h)
            _draw_dotted_row(px, y, style.dot_on, style.dot_off, style.graticule_rgba)
        k += 1
    _, y = _lonlat_to_thumb(0.0, 0.0, w, h)
    _draw_dotted_row(px, y, style.dot_on, style.dot_off, style.graticule_rgba)

    for seg in compute_footprint(spec, o):
        pts = [
            (
                (p.lon + math.pi) * (w / TWO_PI) - 0.5,
                (math.pi / 2 - p.lat) * (h / math.pi) - 0.5,
            )
            for p in seg
        ]
        _draw_polyline(px, pts, style.footprint_rgba)

    fwd = orientation_matrix(o) @ np.array([1.0, 0.0, 0.0])
    lon, lat = dirs_to_lonlat(fwd[None, :])
    cx, cy = _lonlat_to_thumb(float(lon[0]), float(lat[0]), w, h)
    arm = 4
    px[cy, [(cx + d) % w for d in range(-arm, arm + 1)]] = style.marker_rgba
    ys = np.clip(np.arange(cy - arm, cy + arm + 1), 0, h - 1)
    px[ys, cx] = style.marker_rgba
    return RasterImage(px)
