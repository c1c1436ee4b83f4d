"""Shared artifact builders behind both the CLI and the HTTP service.

All user-facing parameters arrive here in degrees and are validated once, so
the two front ends cannot drift apart: identical parameters produce identical
bytes regardless of which entry point supplied them. Validation failures
raise ParamError tagged with the offending field name.
"""

from __future__ import annotations

import math

from .compose import (
    FlatArtifactSpec,
    NetArtifactSpec,
    compose_flat,
    compose_net,
    emit_svg,
    page_spec,
)
from .geometry import Orientation, PerspectiveSpec
from .pngio import encode_png
from .polyhedra import SHAPES
from .raster import (
    EquirectImage,
    GraticuleStyle,
    SamplingConfig,
    make_latlon_chart,
    render_little_planet,
    render_perspective,
)

PAGE_SIZES = ("a4", "letter")
PAGE_ORIENTATIONS = ("portrait", "landscape")

# one source of truth for every user-tunable range (degrees / pixels / dpi)
RANGES = {
    "yaw": (-360.0, 360.0),
    "pitch": (-90.0, 90.0),
    "roll": (-180.0, 180.0),
    "fov": (1.0, 179.0),  # exclusive bounds
    "supersample": (1, 8),
    "dpi": (72.0, 600.0),
    "minimap_fraction": (0.1, 0.5),  # exclusive bounds
    "graticule_spacing": (5.0, 90.0),
    "out_w": (16, 8192),
    "out_h": (16, 8192),
    "preview_max_edge": 1024,
    "planet_size": (16, 8192),
    "chart_size": (2, 8192),
}

DEFAULT_FLAT_SIZE = (1600, 1200)
DEFAULT_PREVIEW_SIZE = (800, 600)


class ParamError(ValueError):
    """A user parameter is out of range; .field names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


def _require(cond: bool, field: str, message: str) -> None:
    if not cond:
        raise ParamError(field, message)


def _finite(value: float, field: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParamError(field, f"{field} must be a number")
    _require(math.isfinite(value), field, f"{field} must be finite")
    return value


def _angle(value: float, field: str) -> float:
    value = _finite(value, field)
    lo, hi = RANGES[field]
    _require(lo <= value <= hi, field, f"{field} must be in [{lo:g}, {hi:g}] degrees")
    return value


def _int_in(value, field: str, lo: int, hi: int) -> int:
    try:
        ivalue = int(value)
    except (TypeError, ValueError):
        raise ParamError(field, f"{field} must be an integer")
    _require(
        ivalue == value and lo <= ivalue <= hi,
        field,
        f"{field} must be an integer in [{lo}, {hi}]",
    )
    return ivalue


def validate_orientation(yaw: float, pitch: float, roll: float) -> Orientation:
    return Orientation(
        math.radians(_angle(yaw, "yaw")),
        math.radians(_angle(pitch, "pitch")),
        math.radians(_angle(roll, "roll")),
    )


def validate_fov(fov: float) -> float:
    fov = _finite(fov, "fov")
    lo, hi = RANGES["fov"]
    _require(lo < fov < hi, "fov", f"fov must be strictly between {lo:g} and {hi:g} degrees")
    return math.radians(fov)


def validate_supersample(supersample) -> SamplingConfig:
    lo, hi = RANGES["supersample"]
    return SamplingConfig(_int_in(supersample, "supersample", lo, hi))


def validate_page(page_size: str, page_orientation: str, dpi: float):
    _require(page_size in PAGE_SIZES, "page_size", f"page_size must be one of {PAGE_SIZES}")
    _require(
        page_orientation in PAGE_ORIENTATIONS,
        "page_orientation",
        f"page_orientation must be one of {PAGE_ORIENTATIONS}",
    )
    dpi = _finite(dpi, "dpi")
    lo, hi = RANGES["dpi"]
    _require(lo <= dpi <= hi, "dpi", f"dpi must be in [{lo:g}, {hi:g}]")
    return page_spec(page_size, page_orientation == "landscape", dpi=dpi)


def validate_shape(shape: str) -> str:
    _require(shape in SHAPES, "shape", f"shape must be one of {SHAPES}")
    return shape


def build_flat_svg(
    img: EquirectImage,
    *,
    yaw: float = 0.0,
    pitch: float = 0.0,
    roll: float = 0.0,
    fov: float = 90.0,
    out_w: int = DEFAULT_FLAT_SIZE[0],
    out_h: int = DEFAULT_FLAT_SIZE[1],
    supersample: int = 2,
    page_size: str = "a4",
    page_orientation: str = "portrait",
    dpi: float = 300.0,
    minimap_fraction: float = 0.28,
    graticule_spacing: float = 30.0,
    caption: str | None = None,
) -> bytes:
    orientation = validate_orientation(yaw, pitch, roll)
    fov_rad = validate_fov(fov)
    out_w = _int_in(out_w, "out_w", *RANGES["out_w"])
    out_h = _int_in(out_h, "out_h", *RANGES["out_h"])
    cfg = validate_supersample(supersample)
    page = validate_page(page_size, page_orientation, dpi)
    frac = _finite(minimap_fraction, "minimap_fraction")
    lo, hi = RANGES["minimap_fraction"]
    _require(lo < frac < hi, "minimap_fraction", f"minimap_fraction must be strictly between {lo} and {hi}")
    spacing = _finite(graticule_spacing, "graticule_spacing")
    lo, hi = RANGES["graticule_spacing"]
    _require(lo <= spacing <= hi, "graticule_spacing", f"graticule_spacing must be in [{lo:g}, {hi:g}] degrees")
    if caption is not None and not isinstance(caption, str):
        raise ParamError("caption", "caption must be a string")
    spec = FlatArtifactSpec(
        PerspectiveSpec(out_w, out_h, fov_rad),
        orientation,
        minimap_fraction=frac,
        graticule=GraticuleStyle(spacing_deg=spacing),
        caption=caption,
    )
    try:
        doc = compose_flat(img, spec, page, cfg)
    except ValueError as exc:  # aspect taller than the page
        raise ParamError("out_h", str(exc))
    return emit_svg(doc)


def build_net_svg(
    img: EquirectImage,
    *,
    shape: str = "cube",
    yaw: float = 0.0,
    pitch: float = 0.0,
    roll: float = 0.0,
    supersample: int = 2,
    page_size: str = "a4",
    page_orientation: str = "portrait",
    dpi: float = 300.0,
) -> bytes:
    shape = validate_shape(shape)
    orientation = validate_orientation(yaw, pitch, roll)
    cfg = validate_supersample(supersample)
    page = validate_page(page_size, page_orientation, dpi)
    doc = compose_net(img, NetArtifactSpec(shape, orientation), page, cfg)
    return emit_svg(doc)


def build_preview_png(
    img: EquirectImage,
    *,
    yaw: float = 0.0,
    pitch: float = 0.0,
    roll: float = 0.0,
    fov: float = 90.0,
    out_w: int = DEFAULT_PREVIEW_SIZE[0],
    out_h: int = DEFAULT_PREVIEW_SIZE[1],
) -> bytes:
    """Reduced-quality perspective render for interactive panning."""
    orientation = validate_orientation(yaw, pitch, roll)
    fov_rad = validate_fov(fov)
    max_edge = RANGES["preview_max_edge"]
    out_w = _int_in(out_w, "out_w", 16, max_edge)
    out_h = _int_in(out_h, "out_h", 16, max_edge)
    raster = render_perspective(
        img, PerspectiveSpec(out_w, out_h, fov_rad), orientation, SamplingConfig(1)
    )
    return raster.encode_png()


def build_planet_png(
    img: EquirectImage,
    *,
    size: int = 1024,
    horizon_fraction: float = 0.35,
    spin: float = 0.0,
    supersample: int = 2,
) -> bytes:
    size = _int_in(size, "size", *RANGES["planet_size"])
    frac = _finite(horizon_fraction, "horizon_fraction")
    _require(0.05 <= frac <= 0.45, "horizon_fraction", "horizon_fraction must be in [0.05, 0.45]")
    spin_deg = _finite(spin, "spin")
    _require(-360.0 <= spin_deg <= 360.0, "spin", "spin must be in [-360, 360] degrees")
    cfg = validate_supersample(supersample)
    raster = render_little_planet(img, size, frac * size, math.radians(spin_deg), cfg)
    return raster.encode_png()


def build_chart_png(*, width: int = 2048, height: int = 1024) -> bytes:
    lo, hi = RANGES["chart_size"]
    width = _int_in(width, "width", lo, hi)
    height = _int_in(height, "height", 1, hi)
    chart = make_latlon_chart(width, height)
    return encode_png(chart.pixels)
