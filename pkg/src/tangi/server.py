"""Server binary: uvicorn wrapper around the HTTP facade."""

from __future__ import annotations

import argparse

import uvicorn

from .service import create_app


def main() -> None:
    parser = argparse.ArgumentParser(
        prog="tangi-server", description="Serve the artifact generation API (and optionally the web UI)."
    )
    parser.add_argument("--host", default="127.0.0.1", help="bind address")
    parser.add_argument("--port", type=int, default=8000, help="bind port")
    parser.add_argument("--cors-origin", default="*", help="allowed browser origin")
    parser.add_argument("--static-dir", default=None, help="directory of UI assets to serve at /")
    args = parser.parse_args()
    app = create_app(cors_origin=args.cors_origin, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
