"""Command-line front end: scripted generation of printable artifacts.

Angles are taken in degrees here and converted exactly once, inside the
shared builders. Exit codes: 0 success, 2 bad usage or parameter, 1 runtime
failure (unreadable input, undecodable image, write errors). Only artifact
bytes ever go to standard output, and only when the output path is "-".
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .artifacts import (
    DEFAULT_FLAT_SIZE,
    DEFAULT_PREVIEW_SIZE,
    PAGE_ORIENTATIONS,
    PAGE_SIZES,
    ParamError,
    build_chart_png,
    build_flat_svg,
    build_net_svg,
    build_planet_png,
    build_preview_png,
)
from .polyhedra import SHAPES
from .raster import EquirectImage


def _add_view_flags(p: argparse.ArgumentParser, with_fov: bool = True) -> None:
    p.add_argument("--yaw", type=float, default=0.0, help="view yaw in degrees")
    p.add_argument("--pitch", type=float, default=0.0, help="view pitch in degrees")
    p.add_argument("--roll", type=float, default=0.0, help="view roll in degrees")
    if with_fov:
        p.add_argument("--fov", type=float, default=90.0, help="horizontal field of view in degrees")


def _add_page_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--page", choices=PAGE_SIZES, default="a4", help="page size")
    p.add_argument(
        "--page-orientation", choices=PAGE_ORIENTATIONS, default="portrait", help="page orientation"
    )
    p.add_argument("--dpi", type=float, default=300.0, help="embedded raster resolution")


def _add_io_flags(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        p.add_argument("--input", "-i", required=True, help="equirectangular PNG/JPEG input")
    p.add_argument("--out", "-o", required=True, help="output path, or - for standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangi",
        description="Turn equirectangular panoramas into printable perspective sheets and fold-up polyhedra.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    flat = sub.add_parser("flat", help="perspective sheet with mini-map (SVG)")
    _add_io_flags(flat)
    _add_view_flags(flat)
    flat.add_argument("--out-w", type=int, default=DEFAULT_FLAT_SIZE[0], help="main panel pixel width")
    flat.add_argument("--out-h", type=int, default=DEFAULT_FLAT_SIZE[1], help="main panel pixel height")
    flat.add_argument("--supersample", type=int, default=2, help="antialiasing grid (1-8)")
    _add_page_flags(flat)
    flat.add_argument("--minimap-fraction", type=float, default=0.28, help="mini-map width as a fraction of the main panel")
    flat.add_argument("--graticule-spacing", type=float, default=30.0, help="mini-map grid spacing in degrees")
    flat.add_argument("--caption", default=None, help="caption text under the main panel")

    net = sub.add_parser("net", help="cut-and-fold polyhedron template (SVG)")
    _add_io_flags(net)
    net.add_argument("--shape", choices=SHAPES, default="cube", help="polyhedron to unfold")
    _add_view_flags(net, with_fov=False)
    net.add_argument("--supersample", type=int, default=2, help="antialiasing grid (1-8)")
    _add_page_flags(net)

    planet = sub.add_parser("planet", help="stereographic little-planet render (PNG)")
    _add_io_flags(planet)
    planet.add_argument("--size", type=int, default=1024, help="output size in pixels (square)")
    planet.add_argument("--horizon-fraction", type=float, default=0.35, help="horizon radius as a fraction of the output size")
    planet.add_argument("--spin", type=float, default=0.0, help="rotation about the vertical axis in degrees")
    planet.add_argument("--supersample", type=int, default=2, help="antialiasing grid (1-8)")

    chart = sub.add_parser("chart", help="synthetic lon/lat calibration chart (PNG)")
    _add_io_flags(chart, needs_input=False)
    chart.add_argument("--width", type=int, default=2048, help="chart width in pixels")
    chart.add_argument("--height", type=int, default=1024, help="chart height in pixels")

    preview = sub.add_parser("preview", help="quick perspective render (PNG)")
    _add_io_flags(preview)
    _add_view_flags(preview)
    preview.add_argument("--out-w", type=int, default=DEFAULT_PREVIEW_SIZE[0], help="preview pixel width")
    preview.add_argument("--out-h", type=int, default=DEFAULT_PREVIEW_SIZE[1], help="preview pixel height")

    return parser


def _load_input(path: str) -> EquirectImage:
    try:
        return EquirectImage.load(path)
    except FileNotFoundError:
        raise RuntimeError(f"input file not found: {path}")
    except OSError as exc:  # unreadable or not an image
        raise RuntimeError(f"cannot decode image {path}: {exc}")
    except ValueError as exc:  # decoded but not a usable panorama
        raise RuntimeError(f"unusable input image {path}: {exc}")


def _write_output(path: str, data: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise RuntimeError(f"cannot write output {path}: {exc}")


def _dispatch(args: argparse.Namespace) -> bytes:
    if args.subcommand == "flat":
        img = _load_input(args.input)
        return build_flat_svg(
            img,
            yaw=args.yaw,
            pitch=args.pitch,
            roll=args.roll,
            fov=args.fov,
            out_w=args.out_w,
            out_h=args.out_h,
            supersample=args.supersample,
            page_size=args.page,
            page_orientation=args.page_orientation,
            dpi=args.dpi,
            minimap_fraction=args.minimap_fraction,
            graticule_spacing=args.graticule_spacing,
            caption=args.caption,
        )
    if args.subcommand == "net":
        img = _load_input(args.input)
        return build_net_svg(
            img,
            shape=args.shape,
            yaw=args.yaw,
            pitch=args.pitch,
            roll=args.roll,
            supersample=args.supersample,
            page_size=args.page,
            page_orientation=args.page_orientation,
            dpi=args.dpi,
        )
    if args.subcommand == "planet":
        img = _load_input(args.input)
        return build_planet_png(
            img,
            size=args.size,
            horizon_fraction=args.horizon_fraction,
            spin=args.spin,
            supersample=args.supersample,
        )
    if args.subcommand == "chart":
        return build_chart_png(width=args.width, height=args.height)
    if args.subcommand == "preview":
        img = _load_input(args.input)
        return build_preview_png(
            img,
            yaw=args.yaw,
            pitch=args.pitch,
            roll=args.roll,
            fov=args.fov,
            out_w=args.out_w,
            out_h=args.out_h,
        )
    raise RuntimeError(f"unknown subcommand {args.subcommand}")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed to stderr
        return int(exc.code or 0)
    try:
        data = _dispatch(args)
        _write_output(args.out, data)
    except ParamError as exc:
        flag = "--" + exc.field.replace("_", "-")
        print(f"error: {flag}: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
