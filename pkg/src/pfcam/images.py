"""Raster IO helpers shared by the codec, sampler, CLI and service.

All PNG output is 8-bit RGB, no alpha, no color-profile chunks, written
with a pinned compression level so repeated runs stay byte-identical.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image

_PNG_COMPRESS_LEVEL = 6


def png_bytes(pixels: np.ndarray) -> bytes:
    """Serialize an (H, W, 3) uint8 array to PNG bytes."""
    if pixels.dtype != np.uint8 or pixels.ndim != 3 or pixels.shape[2] != 3:
        raise ValueError(f"expected (H, W, 3) uint8, got {pixels.dtype} {pixels.shape}")
    buf = io.BytesIO()
    Image.fromarray(pixels, mode="RGB").save(buf, format="PNG",
                                             compress_level=_PNG_COMPRESS_LEVEL)
    return buf.getvalue()


def save_png(path, pixels: np.ndarray) -> None:
    Path(path).write_bytes(png_bytes(pixels))


def load_rgb(source) -> np.ndarray:
    """Read a PNG/JPEG image (path or bytes) as an (H, W, 3) uint8 array."""
    if isinstance(source, (bytes, bytearray)):
        img = Image.open(io.BytesIO(source))
    else:
        img = Image.open(source)
    return np.asarray(img.convert("RGB"), dtype=np.uint8)
