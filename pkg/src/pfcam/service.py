"""Local HTTP preview service.

Read endpoints are pure functions of their query strings and reuse the
exact library code the CLI uses, so responses are byte-identical to CLI
output.  Out-of-range parameters are rejected (never clamped) with a
JSON envelope naming the parameter: {"error": ..., "param": ..., "range": ...}.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, File, Form, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from . import __version__, codec, images
from .camera import CameraRig, MIN_SIZE, ParameterError
from .dataset import PANORAMA_SUFFIXES
from .field import compute_pf_map, make_overlay, overlay_payload
from .pano import Panorama, render_crop

MAX_DIM = 2048


class ApiError(Exception):
    def __init__(self, status: int, error: str, param: str | None = None,
                 range_: tuple | None = None):
        self.status = status
        self.error = error
        self.param = param
        self.range = range_
        super().__init__(error)

    def envelope(self) -> dict:
        payload = {"error": self.error}
        if self.param is not None:
            payload["param"] = self.param
        if self.range is not None:
            payload["range"] = list(self.range)
        return payload


class PanoramaRegistry:
    """Append-only panorama store; reads take snapshots, renders run lock-free."""

    def __init__(self):
        self._lock = threading.Lock()
        self._panos: dict[str, Panorama] = {}
        self._sources: dict[str, str] = {}

    def add(self, pano: Panorama, source: str) -> dict:
        with self._lock:
            if pano.id in self._panos:
                raise ApiError(409, f"panorama id already registered: {pano.id!r}",
                               param="id")
            self._panos[pano.id] = pano
            self._sources[pano.id] = source
        return self.entry(pano.id)

    def get(self, pano_id: str) -> Panorama | None:
        with self._lock:
            return self._panos.get(pano_id)

    def entry(self, pano_id: str) -> dict:
        with self._lock:
            pano = self._panos[pano_id]
            return {"id": pano.id, "name": pano.id,
                    "width": pano.width, "height": pano.height,
                    "source": self._sources[pano.id],
                    "aspect_warning": pano.aspect_warning}

    def entries(self) -> list[dict]:
        with self._lock:
            ids = list(self._panos)
        return [self.entry(pid) for pid in ids]

    def load_directory(self, panos_dir) -> None:
        root = Path(panos_dir)
        for path in sorted(root.iterdir(), key=lambda p: p.name):
            if path.is_file() and path.suffix.lower() in PANORAMA_SUFFIXES:
                self.add(Panorama.from_file(path), source=str(path))


def _check_dim(param: str, value: int) -> int:
    if not MIN_SIZE <= value <= MAX_DIM:
        raise ApiError(400, f"{param}={value} outside legal range [{MIN_SIZE}, {MAX_DIM}]",
                       param=param, range_=(MIN_SIZE, MAX_DIM))
    return value


def _build_rig(roll: float, pitch: float, vfov: float, xi: float,
               yaw: float, w: int, h: int) -> CameraRig:
    _check_dim("w", w)
    _check_dim("h", h)
    try:
        return CameraRig(roll=roll, pitch=pitch, vfov=vfov, xi=xi, yaw=yaw,
                         width=w, height=h)
    except ParameterError as exc:
        raise ApiError(400, str(exc), param=exc.param,
                       range_=(exc.lo, exc.hi)) from exc


def create_app(panos_dir=None) -> FastAPI:
    app = FastAPI(title="pfcam preview service", version=__version__)
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    registry = PanoramaRegistry()
    if panos_dir is not None:
        registry.load_directory(panos_dir)
    app.state.registry = registry

    @app.exception_handler(ApiError)
    def _on_api_error(request, exc: ApiError):
        return JSONResponse(status_code=exc.status, content=exc.envelope())

    @app.exception_handler(RequestValidationError)
    def _on_validation_error(request, exc: RequestValidationError):
        errors = exc.errors()
        param = str(errors[0]["loc"][-1]) if errors else "request"
        return JSONResponse(status_code=400,
                            content={"error": f"invalid value for {param!r}",
                                     "param": param})

    @app.get("/api/panoramas")
    def list_panoramas():
        return registry.entries()

    @app.post("/api/panoramas", status_code=201)
    def upload_panorama(file: UploadFile = File(...), id: str = Form(None)):
        pano_id = id if id else Path(file.filename or "panorama").stem
        if not pano_id:
            raise ApiError(400, "panorama id must not be empty", param="id")
        raw = file.file.read()
        try:
            pixels = images.load_rgb(raw)
        except Exception as exc:
            raise ApiError(400, f"not a decodable image: {exc}", param="file") from exc
        pano = Panorama.from_array(pixels, id=pano_id)
        return registry.add(pano, source=f"upload:{file.filename}")

    @app.get("/api/pfmap")
    def pfmap(roll: float = 0.0, pitch: float = 0.0, vfov: float = 90.0,
              xi: float = 0.0, w: int = 1024, h: int = 1024):
        rig = _build_rig(roll, pitch, vfov, xi, 0.0, w, h)
        png = codec.to_png_bytes(codec.encode(compute_pf_map(rig)))
        return Response(content=png, media_type="image/png")

    @app.get("/api/render")
    def render(pano: str, roll: float = 0.0, pitch: float = 0.0,
               vfov: float = 90.0, xi: float = 0.0, yaw: float = 0.0,
               w: int = 1024, h: int = 1024):
        rig = _build_rig(roll, pitch, vfov, xi, yaw, w, h)
        panorama = registry.get(pano)
        if panorama is None:
            raise ApiError(404, f"unknown panorama id: {pano!r}", param="pano")
        crop = render_crop(rig, panorama)
        return Response(content=images.png_bytes(crop.pixels),
                        media_type="image/png")

    @app.get("/api/field")
    def field_geometry(roll: float = 0.0, pitch: float = 0.0,
                       vfov: float = 90.0, xi: float = 0.0,
                       w: int = 512, h: int = 512, grid: int = 64):
        rig = _build_rig(roll, pitch, vfov, xi, 0.0, w, h)
        field = compute_pf_map(rig)
        try:
            overlay = make_overlay(field, grid=grid)
        except ValueError as exc:
            raise ApiError(400, str(exc), param="grid",
                           range_=(4, max(w, h))) from exc
        return overlay_payload(rig, field, overlay)

    return app
