"""Synthetic panoramas for fixtures, demos and self-checks.

The direction-coded panorama stores each pixel's own view direction in
its RGB value ((d + 1)/2 scaled to bytes), which makes rendered crops
decodable: a crop pixel's color tells you which ray it supposedly came
from, so resampling can be verified without any real imagery.
"""

from __future__ import annotations

import numpy as np

from .pano import Panorama


def _lonlat_grid(width: int, height: int):
    """Per-pixel-center longitude/latitude in degrees, shapes (H, W)."""
    cols = (np.arange(width, dtype=np.float64) + 0.5) / width
    rows = (np.arange(height, dtype=np.float64) + 0.5) / height
    lon = (cols - 0.5) * 360.0
    lat = (0.5 - rows) * 180.0
    return np.meshgrid(lon, lat)


def lonlat_to_direction(lon_deg, lat_deg) -> np.ndarray:
    """Unit world directions (..., 3) from longitude/latitude in degrees."""
    lon = np.radians(np.asarray(lon_deg, dtype=np.float64))
    lat = np.radians(np.asarray(lat_deg, dtype=np.float64))
    cos_lat = np.cos(lat)
    return np.stack([cos_lat * np.sin(lon),    # x east
                     -np.sin(lat),             # y down, so up is negative
                     cos_lat * np.cos(lon)],   # z forward at lon 0
                    axis=-1)


def direction_coded_panorama(width: int = 1024, id: str = "direction-coded") -> Panorama:
    """Panorama whose pixel colors encode their own view directions."""
    height = width // 2
    lon, lat = _lonlat_grid(width, height)
    d = lonlat_to_direction(lon, lat)
    rgb = np.clip(np.floor((d + 1.0) * 0.5 * 255.0 + 0.5), 0, 255).astype(np.uint8)
    return Panorama(pixels=rgb, id=id, aspect_warning=False)


def decode_directions(rgb) -> np.ndarray:
    """Invert the direction coding; returns unit directions (..., 3)."""
    d = np.asarray(rgb, dtype=np.float64) * (2.0 / 255.0) - 1.0
    return d / np.linalg.norm(d, axis=-1, keepdims=True)


def constant_panorama(color=(90, 120, 150), width: int = 512,
                      id: str = "constant") -> Panorama:
    pixels = np.empty((width // 2, width, 3), dtype=np.uint8)
    pixels[:] = np.asarray(color, dtype=np.uint8)
    return Panorama(pixels=pixels, id=id, aspect_warning=False)


def stripe_panorama(height: int = 511, stripe_color=(255, 0, 0),
                    base_color=(0, 0, 255), id: str = "stripe") -> Panorama:
    """Single-pixel horizon stripe; use odd height so the center row sits
    exactly on the equator."""
    width = 2 * height
    pixels = np.empty((height, width, 3), dtype=np.uint8)
    pixels[:] = np.asarray(base_color, dtype=np.uint8)
    pixels[(height - 1) // 2, :] = np.asarray(stripe_color, dtype=np.uint8)
    return Panorama(pixels=pixels, id=id, aspect_warning=False)


def gradient_panorama(width: int = 512, id: str = "gradient") -> Panorama:
    """Smooth sky-to-ground gradient with a longitude hue ramp."""
    height = width // 2
    lon, lat = _lonlat_grid(width, height)
    r = (lon + 180.0) / 360.0 * 255.0
    g = (lat + 90.0) / 180.0 * 255.0
    b = 255.0 - g
    rgb = np.stack([r, g, b], axis=-1)
    return Panorama(pixels=np.clip(np.rint(rgb), 0, 255).astype(np.uint8),
                    id=id, aspect_warning=False)
