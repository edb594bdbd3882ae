"""Shared numeric helpers for the test suite.

Everything here is an independent re-derivation used to cross-check the
library: keep these implementations decoupled from src/pfcam internals.
"""

from __future__ import annotations

import math

import numpy as np


def sample_cone_directions(
    xi: float, count: int, rng: np.random.Generator, margin: float = 0.999
) -> np.ndarray:
    """Unit directions drawn uniformly over the valid forward cone.

    The cone half-angle for distortion ``xi`` is ``acos(-xi)``; ``margin``
    shrinks it slightly so every sample projects with a healthy denominator.
    """
    theta_max = margin * math.acos(-min(xi, 1.0))
    cos_t = rng.uniform(math.cos(theta_max), 1.0, size=count)
    phi = rng.uniform(0.0, 2.0 * math.pi, size=count)
    sin_t = np.sqrt(np.clip(1.0 - cos_t**2, 0.0, None))
    return np.stack([sin_t * np.cos(phi), sin_t * np.sin(phi), cos_t], axis=-1)


def angle_between_deg(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise angle between stacks of vectors, in degrees."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    num = np.sum(a * b, axis=-1)
    den = np.linalg.norm(a, axis=-1) * np.linalg.norm(b, axis=-1)
    cos = np.clip(num / np.maximum(den, 1e-300), -1.0, 1.0)
    return np.degrees(np.arccos(cos))


def bilerp(image: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Bilinear sample of ``image[row, col, ...]`` at (x=col, y=row), clamped.

    Integer coordinates address pixel centers, matching how the field maps
    are indexed.  Used to resample one field onto rotated coordinates.
    """
    h, w = image.shape[:2]
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, w - 1.0)
    y = np.clip(np.asarray(y, dtype=np.float64), 0.0, h - 1.0)
    x0 = np.clip(np.floor(x).astype(int), 0, w - 2) if w > 1 else np.zeros_like(x, int)
    y0 = np.clip(np.floor(y).astype(int), 0, h - 2) if h > 1 else np.zeros_like(y, int)
    x1 = np.minimum(x0 + 1, w - 1)
    y1 = np.minimum(y0 + 1, h - 1)
    fx = (x - x0)[..., None] if image.ndim == 3 else x - x0
    fy = (y - y0)[..., None] if image.ndim == 3 else y - y0
    top = image[y0, x0] * (1 - fx) + image[y0, x1] * fx
    bot = image[y1, x0] * (1 - fx) + image[y1, x1] * fx
    return top * (1 - fy) + bot * fy


def rot2(theta_deg: float) -> np.ndarray:
    """2x2 rotation matrix acting on (u, v) image-plane vectors."""
    t = math.radians(theta_deg)
    return np.array(
        [[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]], dtype=np.float64
    )
