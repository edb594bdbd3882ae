"""Equirectangular panoramas and perspective crop rendering.

Panorama layout: row 0 is the zenith, the center row the horizon, and
column W/2 faces yaw 0 (world +z).  Longitude grows eastward (+x).  A
full panorama spans 360 x 180 degrees, so the raster should be 2:1;
slightly cropped files are accepted with a warning flag instead of being
rejected.

Sampling uses the texel convention: pixel (i, j) covers the half-open
cell [i, i+1) x [j, j+1) with its center at (i+0.5, j+0.5).  Bilinear
lookups wrap in longitude and clamp at the pole rows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import images
from .camera import CameraRig, intrinsics_from_rig, rig_rotation, unproject

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Panorama:
    """An equirectangular RGB panorama with a stable identifier."""

    pixels: np.ndarray   # (H, W, 3) uint8
    id: str
    aspect_warning: bool = False

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def from_array(cls, pixels: np.ndarray, id: str) -> "Panorama":
        if pixels.dtype != np.uint8 or pixels.ndim != 3 or pixels.shape[2] != 3:
            raise ValueError(f"panorama {id!r}: expected (H, W, 3) uint8, "
                             f"got {pixels.dtype} {pixels.shape}")
        h, w = pixels.shape[:2]
        warn = w != 2 * h
        if warn:
            logger.warning("panorama %r is %dx%d, not 2:1 equirectangular", id, w, h)
        return cls(pixels=pixels, id=id, aspect_warning=warn)

    @classmethod
    def from_file(cls, path, id: str | None = None) -> "Panorama":
        path = Path(path)
        return cls.from_array(images.load_rgb(path), id if id is not None else path.stem)


@dataclass(frozen=True)
class CropImage:
    """A rendered perspective crop."""

    pixels: np.ndarray   # (H, W, 3) uint8

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def equirect_position(dirs, width: int, height: int) -> np.ndarray:
    """Map unit world directions (..., 3) to continuous panorama coords (..., 2).

    lon = atan2(x, z) in [-180, 180), lat = asin(-y); u = (lon/360 + 0.5)*W,
    v = (0.5 - lat/180)*H.
    """
    d = np.asarray(dirs, dtype=np.float64)
    lon = np.degrees(np.arctan2(d[..., 0], d[..., 2]))
    lat = np.degrees(np.arcsin(np.clip(-d[..., 1], -1.0, 1.0)))
    u = (lon / 360.0 + 0.5) * width
    v = (0.5 - lat / 180.0) * height
    return np.stack([u, v], axis=-1)


def _bilinear_wrap(pixels: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Bilinear lookup at continuous coords; wraps columns, clamps rows."""
    h, w = pixels.shape[:2]
    x = u - 0.5
    y = v - 0.5
    x0 = np.floor(x).astype(np.int64)
    y0 = np.floor(y).astype(np.int64)
    fx = (x - x0)[..., None]
    fy = (y - y0)[..., None]

    x0w = x0 % w
    x1w = (x0 + 1) % w
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)

    img = pixels.astype(np.float64)
    top = img[y0c, x0w] * (1.0 - fx) + img[y0c, x1w] * fx
    bot = img[y1c, x0w] * (1.0 - fx) + img[y1c, x1w] * fx
    return top * (1.0 - fy) + bot * fy


def equirect_lookup(dirs, pano: Panorama) -> np.ndarray:
    """Sample the panorama along unit world directions; returns float RGB."""
    pos = equirect_position(dirs, pano.width, pano.height)
    return _bilinear_wrap(pano.pixels, pos[..., 0], pos[..., 1])


def render_crop(rig: CameraRig, pano: Panorama) -> CropImage:
    """Render the rig's perspective view out of the panorama.

    Deterministic: byte-identical output for identical inputs, regardless
    of thread count (pure vectorized math, no shared state).
    """
    intr = intrinsics_from_rig(rig)
    u = np.arange(rig.width, dtype=np.float64)
    v = np.arange(rig.height, dtype=np.float64)
    uu, vv = np.meshgrid(u, v)
    dirs = unproject(np.stack([uu, vv], axis=-1), intr)
    world = dirs @ rig_rotation(rig).T
    colors = equirect_lookup(world, pano)
    return CropImage(pixels=np.clip(np.rint(colors), 0.0, 255.0).astype(np.uint8))
