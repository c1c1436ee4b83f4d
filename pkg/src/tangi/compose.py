"""Page layout and SVG serialization.

A VectorDoc is a millimeter-unit page holding embedded rasters, styled paths,
and text, in paint order. compose_flat builds the perspective-plus-minimap
sheet; compose_net builds the cut-and-fold template. emit_svg serializes
either one deterministically (fixed 3-decimal coordinates, sequential element
ids, base64 PNG images, no timestamps), so equal inputs give equal bytes.
"""

from __future__ import annotations

import base64
import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .geometry import Orientation, PerspectiveSpec, orientation_matrix
from .polyhedra import NetLayout, PolyhedronModel, TabStyle, get_model, unfold
from .raster import (
    EquirectImage,
    FacePlaneSpec,
    GraticuleStyle,
    RasterImage,
    SamplingConfig,
    render_face,
    render_minimap,
    render_perspective,
)

MM_PER_INCH = 25.4

PAGE_SIZES_MM = {"a4": (210.0, 297.0), "letter": (215.9, 279.4)}

CUT_COLOR = "#000000"
FOLD_COLOR = "#808080"
LINE_WIDTH_MM = 0.3
DASH_PATTERNS = {"solid": None, "dashed": "3,1", "dotted": "2,2"}

# breathing room between the net artwork (strokes included) and the margins
NET_CLEARANCE_MM = 1.0


@dataclass(frozen=True)
class PageSpec:
    width_mm: float = 210.0
    height_mm: float = 297.0
    margin_mm: float = 10.0
    dpi: float = 300.0

    def __post_init__(self):
        if self.printable_w <= 0 or self.printable_h <= 0:
            raise ValueError("margins leave no printable area")
        if not 72 <= self.dpi <= 600:
            raise ValueError("dpi must be in [72, 600]")

    @property
    def printable_w(self) -> float:
        return self.width_mm - 2 * self.margin_mm

    @property
    def printable_h(self) -> float:
        return self.height_mm - 2 * self.margin_mm


def page_spec(size: str = "a4", landscape: bool = False, margin_mm: float = 10.0, dpi: float = 300.0) -> PageSpec:
    try:
        w, h = PAGE_SIZES_MM[size]
    except KeyError:
        raise ValueError(f"unknown page size {size!r}; expected one of {sorted(PAGE_SIZES_MM)}")
    if landscape:
        w, h = h, w
    return PageSpec(w, h, margin_mm, dpi)


@dataclass(frozen=True)
class RasterElement:
    image: RasterImage
    x_mm: float
    y_mm: float
    w_mm: float
    h_mm: float


@dataclass(frozen=True)
class PathElement:
    points_mm: np.ndarray  # (N, 2)
    stroke: str = "solid"  # solid | dashed | dotted
    width_mm: float = LINE_WIDTH_MM
    color: str = CUT_COLOR
    css_class: str | None = None
    closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "points_mm", np.asarray(self.points_mm, dtype=float))
        if self.stroke not in DASH_PATTERNS:
            raise ValueError(f"unknown stroke style {self.stroke!r}")
        if self.points_mm.ndim != 2 or len(self.points_mm) < 2:
            raise ValueError("path needs at least 2 points")


@dataclass(frozen=True)
class TextElement:
    text: str
    x_mm: float
    y_mm: float
    size_mm: float = 4.0
    anchor: str = "middle"


@dataclass
class VectorDoc:
    page: PageSpec
    elements: list = field(default_factory=list)


@dataclass(frozen=True)
class FlatArtifactSpec:
    """Perspective sheet: main panel filling the printable width, mini-map
    inset in a corner of the main panel."""

    perspective: PerspectiveSpec
    orientation: Orientation = Orientation()
    minimap_fraction: float = 0.28
    minimap_corner: str = "upper-right"
    graticule: GraticuleStyle = GraticuleStyle()
    caption: str | None = None

    def __post_init__(self):
        if not 0.1 < self.minimap_fraction < 0.5:
            raise ValueError("minimap fraction must be strictly between 0.1 and 0.5")
        if self.minimap_corner not in ("upper-right", "upper-left", "lower-right", "lower-left"):
            raise ValueError(f"unknown minimap corner {self.minimap_corner!r}")


@dataclass(frozen=True)
class NetArtifactSpec:
    shape: str
    orientation: Orientation = Orientation()
    tab_style: TabStyle = TabStyle()

    def __post_init__(self):
        get_model(self.shape)  # raises on unsupported shape


CAPTION_SIZE_MM = 4.0
CAPTION_GAP_MM = 2.0
MINIMAP_INNER_MARGIN_MM = 2.0
MINIMAP_BORDER_MM = 0.3


def compose_flat(
    img: EquirectImage,
    spec: FlatArtifactSpec,
    page: PageSpec = PageSpec(),
    cfg: SamplingConfig = SamplingConfig(),
) -> VectorDoc:
    """Perspective crop at printable width with a graticuled mini-map inset."""
    p = spec.perspective
    main_w = page.printable_w
    main_h = main_w * p.out_h / p.out_w
    needed = main_h + (CAPTION_SIZE_MM + 2 * CAPTION_GAP_MM if spec.caption else 0.0)
    if needed > page.printable_h + 1e-9:
        raise ValueError(
            f"perspective panel {main_h:.1f} mm tall exceeds the printable height "
            f"{page.printable_h:.1f} mm; use a landscape page or a wider aspect"
        )

    doc = VectorDoc(page)
    main = render_perspective(img, p, spec.orientation, cfg)
    x0, y0 = page.margin_mm, page.margin_mm
    doc.elements.append(RasterElement(main, x0, y0, main_w, main_h))

    mini_w = spec.minimap_fraction * main_w
    mini_h = mini_w / 2
    mini_px = max(64, round(mini_w / MM_PER_INCH * page.dpi))
    mini = render_minimap(img, p, spec.orientation, mini_px, spec.graticule)
    if spec.minimap_corner == "upper-right":
        mx, my = x0 + main_w - MINIMAP_INNER_MARGIN_MM - mini_w, y0 + MINIMAP_INNER_MARGIN_MM
    elif spec.minimap_corner == "upper-left":
        mx, my = x0 + MINIMAP_INNER_MARGIN_MM, y0 + MINIMAP_INNER_MARGIN_MM
    elif spec.minimap_corner == "lower-right":
        mx = x0 + main_w - MINIMAP_INNER_MARGIN_MM - mini_w
        my = y0 + main_h - MINIMAP_INNER_MARGIN_MM - mini_h
    else:
        mx, my = x0 + MINIMAP_INNER_MARGIN_MM, y0 + main_h - MINIMAP_INNER_MARGIN_MM - mini_h
    doc.elements.append(RasterElement(mini, mx, my, mini_w, mini_h))
    border = np.array([(mx, my), (mx + mini_w, my), (mx + mini_w, my + mini_h), (mx, my + mini_h)])
    doc.elements.append(
        PathElement(border, "solid", MINIMAP_BORDER_MM, CUT_COLOR, css_class="minimap-border", closed=True)
    )

    if spec.caption:
        doc.elements.append(
            TextElement(
                spec.caption,
                page.width_mm / 2,
                y0 + main_h + CAPTION_GAP_MM + CAPTION_SIZE_MM,
                CAPTION_SIZE_MM,
            )
        )
    return doc


def _net_with_cap(model: PolyhedronModel, spec: NetArtifactSpec, cap_units: float | None) -> NetLayout:
    return unfold(model, None, spec.tab_style, tab_cap_units=cap_units)


def _fit_scale(net: NetLayout, fit_w: float, fit_h: float) -> float:
    lo, hi = net.bounds()
    size = hi - lo
    return min(fit_w / size[0], fit_h / size[1])


def net_print_scale(model: PolyhedronModel, spec: NetArtifactSpec, page: PageSpec) -> tuple[float, NetLayout]:
    """Largest mm-per-model-unit scale whose net (tabs included, tab height
    capped at print scale) fits the printable area with stroke clearance.

    The tab cap couples tab geometry to the scale, so iterate the monotone
    fixed point s = fit / bbox(cap = cap_mm / s); it converges to the
    binding-dimension equality in a handful of rounds.
    """
    fit_w = page.printable_w - 2 * NET_CLEARANCE_MM
    fit_h = page.printable_h - 2 * NET_CLEARANCE_MM
    if fit_w <= 0 or fit_h <= 0:
        raise ValueError("page too small for a net")
    s = _fit_scale(_net_with_cap(model, spec, None), fit_w, fit_h)
    for _ in range(60):
        net = _net_with_cap(model, spec, spec.tab_style.cap_mm / s)
        s_new = _fit_scale(net, fit_w, fit_h)
        if abs(s_new - s) <= 1e-12 * s:
            s = s_new
            break
        s = s_new
    net = _net_with_cap(model, spec, spec.tab_style.cap_mm / s)
    return s, net


def net_fits(model: PolyhedronModel, spec: NetArtifactSpec, page: PageSpec, scale: float) -> bool:
    """Would the net, with tabs capped at this print scale, fit the page?"""
    fit_w = page.printable_w - 2 * NET_CLEARANCE_MM
    fit_h = page.printable_h - 2 * NET_CLEARANCE_MM
    net = _net_with_cap(model, spec, spec.tab_style.cap_mm / scale)
    lo, hi = net.bounds()
    size = (hi - lo) * scale
    return bool(size[0] <= fit_w * (1 + 1e-9) and size[1] <= fit_h * (1 + 1e-9))


def _rotated_face_plane(
    model: PolyhedronModel, net: NetLayout, face: int, px_per_unit: float
) -> FacePlaneSpec:
    """FacePlaneSpec whose (e1, e2) basis is pre-rotated by the face's net
    placement, so render_face produces a raster axis-aligned in net coords."""
    fr = model.face_frames[face]
    rot, trans = net.transforms[face]
    basis = np.stack([fr.e1, fr.e2], axis=1) @ rot.T  # 3x2
    center = fr.centroid - basis @ trans
    return FacePlaneSpec(center, basis[:, 0], basis[:, 1], net.placed_faces[face], px_per_unit)


def compose_net(
    img: EquirectImage,
    spec: NetArtifactSpec,
    page: PageSpec = PageSpec(),
    cfg: SamplingConfig = SamplingConfig(),
) -> VectorDoc:
    """Cut-and-fold template: projected face rasters under cut/fold/tab lines,
    scaled as large as the printable area allows and centered."""
    model = get_model(spec.shape)
    scale, net = net_print_scale(model, spec, page)
    lo, hi = net.bounds()
    ox = page.margin_mm + NET_CLEARANCE_MM + (page.printable_w - 2 * NET_CLEARANCE_MM - scale * (hi[0] - lo[0])) / 2 - scale * lo[0]
    oy = page.margin_mm + NET_CLEARANCE_MM + (page.printable_h - 2 * NET_CLEARANCE_MM - scale * (hi[1] - lo[1])) / 2 + scale * hi[1]

    def to_page(pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(pts)
        return np.stack([ox + scale * pts[:, 0], oy - scale * pts[:, 1]], axis=1)

    doc = VectorDoc(page)
    ppu = scale * page.dpi / MM_PER_INCH  # pixels per model unit
    for f in range(model.num_faces):
        face_spec = _rotated_face_plane(model, net, f, ppu)
        raster = render_face(img, face_spec, spec.orientation, cfg)
        smin, tmin = face_spec.polygon2d.min(axis=0)
        tmax = face_spec.polygon2d.max(axis=0)[1]
        doc.elements.append(
            RasterElement(
                raster,
                ox + scale * smin,
                oy - scale * tmax,
                raster.width / ppu * scale,
                raster.height / ppu * scale,
            )
        )
    for cut in net.cut_edges:
        doc.elements.append(
            PathElement(to_page(np.stack([cut.p0, cut.p1])), "solid", LINE_WIDTH_MM, CUT_COLOR, "cut")
        )
    for fold in net.fold_edges:
        doc.elements.append(
            PathElement(to_page(np.stack([fold.p0, fold.p1])), "dashed", LINE_WIDTH_MM, FOLD_COLOR, "fold")
        )
    for tab in net.tabs:
        q0, q1, p1, p0 = to_page(tab.polygon)
        doc.elements.append(
            PathElement(np.stack([q1, p1, p0, q0]), "solid", LINE_WIDTH_MM, CUT_COLOR, "tab")
        )
    for tab in net.tabs:
        doc.elements.append(
            PathElement(to_page(tab.polygon[:2]), "dashed", LINE_WIDTH_MM, FOLD_COLOR, "tab-base")
        )
    return doc


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def emit_svg(doc: VectorDoc) -> bytes:
    """Serialize to SVG 1.1 with mm units. Deterministic for equal input."""
    page = doc.page
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" '
        f'version="1.1" width="{_fmt(page.width_mm)}mm" height="{_fmt(page.height_mm)}mm" '
        f'viewBox="0 0 {_fmt(page.width_mm)} {_fmt(page.height_mm)}">\n'
    ]
    for i, el in enumerate(doc.elements):
        eid = f"e{i}"
        if isinstance(el, RasterElement):
            b64 = base64.b64encode(el.image.encode_png()).decode("ascii")
            out.append(
                f'<image id="{eid}" x="{_fmt(el.x_mm)}" y="{_fmt(el.y_mm)}" '
                f'width="{_fmt(el.w_mm)}" height="{_fmt(el.h_mm)}" '
                f'preserveAspectRatio="none" xlink:href="data:image/png;base64,{b64}"/>\n'
            )
        elif isinstance(el, PathElement):
            cmds = "M " + " L ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in el.points_mm)
            if el.closed:
                cmds += " Z"
            cls = f' class="{el.css_class}"' if el.css_class else ""
            dash = DASH_PATTERNS[el.stroke]
            dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
            out.append(
                f'<path id="{eid}"{cls} d="{cmds}" fill="none" stroke="{el.color}" '
                f'stroke-width="{_fmt(el.width_mm)}"{dash_attr}/>\n'
            )
        elif isinstance(el, TextElement):
            out.append(
                f'<text id="{eid}" x="{_fmt(el.x_mm)}" y="{_fmt(el.y_mm)}" '
                f'font-family="sans-serif" font-size="{_fmt(el.size_mm)}" '
                f'text-anchor="{el.anchor}" fill="#000000">{escape(el.text)}</text>\n'
            )
        else:
            raise TypeError(f"unknown element type {type(el).__name__}")
    out.append("</svg>\n")
    return "".join(out).encode("utf-8")
