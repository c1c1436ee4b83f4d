"""Stateless HTTP facade over the artifact builders.

Endpoints live under /api/v1 and mirror the CLI exactly: the same shared
builders run on the same degree-denominated parameters, so a service response
is byte-identical to the CLI output for identical inputs. Uploads are decoded
in memory and never persisted.

Error contract: every 4xx body is JSON {"error": str} plus a "field" key when
a specific parameter is at fault. Oversize uploads give 413, undecodable
images 422, anything wrong with parameters 400.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict, ValidationError

from .artifacts import (
    DEFAULT_FLAT_SIZE,
    DEFAULT_PREVIEW_SIZE,
    PAGE_ORIENTATIONS,
    PAGE_SIZES,
    RANGES,
    ParamError,
    build_flat_svg,
    build_net_svg,
    build_preview_png,
)
from .compose import PAGE_SIZES_MM
from .polyhedra import SHAPES, face_distortion, get_model
from .raster import EquirectImage

MAX_IMAGE_BYTES = 64 * 2**20
# multipart framing + params part on top of the image cap
_MAX_BODY_BYTES = MAX_IMAGE_BYTES + 2**20

SVG_MEDIA = "image/svg+xml"
PNG_MEDIA = "image/png"


class ApiError(Exception):
    def __init__(self, status: int, message: str, field: str | None = None):
        self.status = status
        self.message = message
        self.field = field


class FlatParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0
    fov: float = 90.0
    out_w: int = DEFAULT_FLAT_SIZE[0]
    out_h: int = DEFAULT_FLAT_SIZE[1]
    supersample: int = 2
    page_size: str = "a4"
    page_orientation: str = "portrait"
    dpi: float = 300.0
    minimap_fraction: float = 0.28
    graticule_spacing: float = 30.0
    caption: str | None = None


class NetParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    shape: str = "cube"
    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0
    supersample: int = 2
    page_size: str = "a4"
    page_orientation: str = "portrait"
    dpi: float = 300.0


class PreviewParams(BaseModel):
    model_config = ConfigDict(extra="forbid")
    yaw: float = 0.0
    pitch: float = 0.0
    roll: float = 0.0
    fov: float = 90.0
    out_w: int = DEFAULT_PREVIEW_SIZE[0]
    out_h: int = DEFAULT_PREVIEW_SIZE[1]


def _parse_params(raw: str, model: type[BaseModel]) -> BaseModel:
    try:
        data = json.loads(raw) if raw.strip() else {}
    except json.JSONDecodeError as exc:
        raise ApiError(400, f"params is not valid JSON: {exc}", "params")
    if not isinstance(data, dict):
        raise ApiError(400, "params must be a JSON object", "params")
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        err = exc.errors()[0]
        field = str(err["loc"][0]) if err["loc"] else "params"
        raise ApiError(400, f"{field}: {err['msg']}", field)


async def _read_image(image: UploadFile) -> EquirectImage:
    data = await image.read()
    if len(data) > MAX_IMAGE_BYTES:
        raise ApiError(413, "image exceeds the 64 MiB upload cap")
    try:
        return EquirectImage.decode(data)
    except (OSError, ValueError) as exc:
        raise ApiError(422, f"cannot decode image: {exc}")


def _distortion_metrics() -> dict:
    out = {}
    for shape in SHAPES:
        model = get_model(shape)
        per_face = [face_distortion(model, f) for f in range(model.num_faces)]
        entry = {"max": max(per_face), "per_face": per_face}
        out[shape] = entry
    return out


def create_app(cors_origin: str = "*", static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="tangi", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError):
        body = {"error": exc.message}
        if exc.field:
            body["field"] = exc.field
        return JSONResponse(body, status_code=exc.status)

    @app.exception_handler(ParamError)
    async def on_param_error(request: Request, exc: ParamError):
        return JSONResponse({"error": str(exc), "field": exc.field}, status_code=400)

    @app.exception_handler(RequestValidationError)
    async def on_request_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        field = "request"
        if errors and errors[0].get("loc"):
            field = str(errors[0]["loc"][-1])
        return JSONResponse({"error": "malformed request", "field": field}, status_code=400)

    @app.middleware("http")
    async def cap_body_size(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and length.isdigit() and int(length) > _MAX_BODY_BYTES:
            return JSONResponse({"error": "request body too large"}, status_code=413)
        return await call_next(request)

    @app.post("/api/v1/flat")
    async def flat(image: UploadFile = File(...), params: str = Form("{}")):
        p = _parse_params(params, FlatParams)
        img = await _read_image(image)
        svg = build_flat_svg(img, **p.model_dump())
        return Response(svg, media_type=SVG_MEDIA)

    @app.post("/api/v1/net")
    async def net(image: UploadFile = File(...), params: str = Form("{}")):
        p = _parse_params(params, NetParams)
        img = await _read_image(image)
        svg = build_net_svg(img, **p.model_dump())
        return Response(svg, media_type=SVG_MEDIA)

    @app.post("/api/v1/preview")
    async def preview(image: UploadFile = File(...), params: str = Form("{}")):
        p = _parse_params(params, PreviewParams)
        img = await _read_image(image)
        png = build_preview_png(img, **p.model_dump())
        return Response(png, media_type=PNG_MEDIA)

    @app.get("/api/v1/meta")
    async def meta():
        return {
            "shapes": list(SHAPES),
            "pages": {name: list(dims) for name, dims in PAGE_SIZES_MM.items()},
            "page_orientations": list(PAGE_ORIENTATIONS),
            "ranges": {
                "yaw": list(RANGES["yaw"]),
                "pitch": list(RANGES["pitch"]),
                "roll": list(RANGES["roll"]),
                "fov": list(RANGES["fov"]),
                "supersample": list(RANGES["supersample"]),
                "dpi": list(RANGES["dpi"]),
                "minimap_fraction": list(RANGES["minimap_fraction"]),
                "graticule_spacing": list(RANGES["graticule_spacing"]),
                "preview_max_edge": RANGES["preview_max_edge"],
            },
            "defaults": {
                "flat": FlatParams().model_dump(),
                "net": NetParams().model_dump(),
                "preview": PreviewParams().model_dump(),
            },
            "distortion": _distortion_metrics(),
        }

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
