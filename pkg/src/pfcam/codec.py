"""Fixed 8-bit RGB encoding of perspective fields.

R, G carry the up-vector components mapped from [-1, 1] to [0, 255];
B carries the latitude mapped from [-90, 90] to [0, 255].  Rounding is
half-away-from-zero, pinned so encodings are byte-identical everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import images
from .field import DEGENERATE_LATITUDE, PerspectiveField, UP_FILL

# Decoded up-vectors shorter than this carry no direction information.
_UP_NORM_EPS = 1e-6


@dataclass(frozen=True)
class EncodedPFMap:
    """An (H, W, 3) uint8 raster holding an encoded perspective field."""

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


def _quantize(values: np.ndarray) -> np.ndarray:
    # Half-away-from-zero; inputs are non-negative so floor(x + 0.5) does it.
    return np.clip(np.floor(values + 0.5), 0.0, 255.0).astype(np.uint8)


def encode(field: PerspectiveField) -> EncodedPFMap:
    """Quantize a perspective field to its 8-bit RGB form."""
    r = _quantize((field.up[..., 0] + 1.0) * 0.5 * 255.0)
    g = _quantize((field.up[..., 1] + 1.0) * 0.5 * 255.0)
    b = _quantize((field.latitude + 90.0) / 180.0 * 255.0)
    return EncodedPFMap(pixels=np.stack([r, g, b], axis=-1))


def decode(encoded: EncodedPFMap) -> PerspectiveField:
    """Invert :func:`encode` up to quantization.

    Up-vectors are renormalized to unit length; pixels whose decoded up
    has norm below 1e-6 are flagged degenerate, as are pixels whose
    decoded |latitude| exceeds the degeneracy threshold.
    """
    rgb = encoded.pixels.astype(np.float64)
    ux = rgb[..., 0] * (2.0 / 255.0) - 1.0
    uy = rgb[..., 1] * (2.0 / 255.0) - 1.0
    latitude = rgb[..., 2] * (180.0 / 255.0) - 90.0

    norm = np.hypot(ux, uy)
    no_direction = norm < _UP_NORM_EPS
    safe = np.where(no_direction, 1.0, norm)
    up = np.stack([ux / safe, uy / safe], axis=-1)
    mask = (np.abs(latitude) > DEGENERATE_LATITUDE) | no_direction
    up[no_direction] = UP_FILL
    return PerspectiveField(up=up, latitude=latitude, degenerate_mask=mask)


def to_png_bytes(encoded: EncodedPFMap) -> bytes:
    return images.png_bytes(encoded.pixels)


def save(path, encoded: EncodedPFMap) -> None:
    images.save_png(path, encoded.pixels)


def load(source) -> EncodedPFMap:
    """Read an encoded map from a PNG path or bytes."""
    return EncodedPFMap(pixels=images.load_rgb(source))
