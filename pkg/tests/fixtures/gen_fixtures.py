"""Regenerate the golden SVG fixtures.

Run from the repository root after any *intentional* change to rendering or
layout defaults, then review the diffs:

    python3 tests/fixtures/gen_fixtures.py

The fixtures freeze the full pipeline (chart -> render -> compose -> SVG) at
the parameters below; the acceptance suite compares fresh output bytes
against these files.
"""

import pathlib

from tangi.artifacts import build_flat_svg, build_net_svg
from tangi.raster import make_latlon_chart

HERE = pathlib.Path(__file__).parent

CHART = make_latlon_chart(512, 256)
COMMON = {"dpi": 96, "supersample": 1}
FLAT_PARAMS = {"yaw": 30.0, "pitch": 10.0, "fov": 90.0, "out_w": 320, "out_h": 240, **COMMON}


def main() -> None:
    (HERE / "cube-net.svg").write_bytes(build_net_svg(CHART, shape="cube", **COMMON))
    (HERE / "cuboctahedron-net.svg").write_bytes(
        build_net_svg(CHART, shape="cuboctahedron", **COMMON)
    )
    (HERE / "flat.svg").write_bytes(build_flat_svg(CHART, **FLAT_PARAMS))
    for name in ("cube-net.svg", "cuboctahedron-net.svg", "flat.svg"):
        print(f"wrote {name}: {(HERE / name).stat().st_size} bytes")


if __name__ == "__main__":
    main()
