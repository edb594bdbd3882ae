"""Unified spherical camera model.

Projection goes through a unit sphere whose center is offset from the
pinhole by the distortion parameter ``xi`` along the optical axis.
``xi=0`` collapses to an ideal pinhole; ``xi=1`` pushes the usable field
of view past a hemisphere.  The same four parameters (roll, pitch,
vertical FoV, xi) plus a yaw anchor describe every view in this package.

Conventions, fixed package-wide:

* camera frame: x right, y down, z forward (right-handed)
* image: u along x, v along y, v grows downward
* world frame: same axes at yaw 0; the up axis is (0, -1, 0) so gravity
  points along +y
* positive pitch looks up, positive roll turns projected up-vectors
  clockwise on screen, yaw pans toward +x (east)
* the principal point is the raster center ((w-1)/2, (h-1)/2) under the
  pixel-center convention

All geometry helpers broadcast over leading axes: points are (..., 3),
pixels (..., 2), float64 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

WORLD_UP = np.array([0.0, -1.0, 0.0])

# A point is "behind" the camera when the projection denominator
# xi*|p| + z drops below this fraction of |p|.
BEHIND_EPS = 1e-9

ROLL_RANGE = (-90.0, 90.0)
PITCH_RANGE = (-90.0, 90.0)
VFOV_RANGE = (15.0, 140.0)
XI_RANGE = (0.0, 1.0)
YAW_RANGE = (0.0, 360.0)
MIN_SIZE = 2


class ParameterError(ValueError):
    """A camera parameter fell outside its legal range.

    Carries the offending parameter name and its bounds so front ends
    (CLI flags, HTTP query params) can report exact, non-clamped errors.
    """

    def __init__(self, param: str, value, lo, hi, interval: str):
        self.param = param
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(f"{param}={value!r} outside legal range {interval}")


def _check_range(param: str, value: float, lo: float, hi: float,
                 lo_open: bool = False, hi_open: bool = False) -> None:
    if not np.isfinite(value):
        raise ParameterError(param, value, lo, hi,
                             f"{'(' if lo_open else '['}{lo:g}, {hi:g}{')' if hi_open else ']'}")
    lo_ok = value > lo if lo_open else value >= lo
    hi_ok = value < hi if hi_open else value <= hi
    if not (lo_ok and hi_ok):
        interval = f"{'(' if lo_open else '['}{lo:g}, {hi:g}{')' if hi_open else ']'}"
        raise ParameterError(param, value, lo, hi, interval)


@dataclass(frozen=True)
class CameraRig:
    """One camera view: intrinsic distortion plus orientation and raster size.

    Angles are degrees.  roll/pitch are open intervals (-90, 90), vfov is
    [15, 140], xi is [0, 1] and yaw is [0, 360).  Yaw only anchors the view
    inside a panorama; the perspective field itself is yaw-invariant.
    """

    roll: float = 0.0
    pitch: float = 0.0
    vfov: float = 90.0
    xi: float = 0.0
    yaw: float = 0.0
    width: int = 1024
    height: int = 1024

    def __post_init__(self):
        for name in ("roll", "pitch", "vfov", "xi", "yaw"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("width", "height"):
            value = getattr(self, name)
            if not float(value).is_integer():
                raise ParameterError(name, value, MIN_SIZE, None, f"integers >= {MIN_SIZE}")
            object.__setattr__(self, name, int(value))
        _check_range("roll", self.roll, *ROLL_RANGE, lo_open=True, hi_open=True)
        _check_range("pitch", self.pitch, *PITCH_RANGE, lo_open=True, hi_open=True)
        _check_range("vfov", self.vfov, *VFOV_RANGE)
        _check_range("xi", self.xi, *XI_RANGE)
        _check_range("yaw", self.yaw, *YAW_RANGE, hi_open=True)
        for name in ("width", "height"):
            if getattr(self, name) < MIN_SIZE:
                raise ParameterError(name, getattr(self, name), MIN_SIZE, None,
                                     f"integers >= {MIN_SIZE}")


@dataclass(frozen=True)
class Intrinsics:
    """Focal length (pixels), principal point and distortion."""

    f: float
    u0: float
    v0: float
    xi: float


def intrinsics_from_rig(rig: CameraRig) -> Intrinsics:
    """Derive intrinsics so vfov means the same thing at every distortion.

    The focal length is chosen such that the ray vfov/2 off-axis in the
    vertical plane lands exactly height/2 pixels from the principal point,
    for every xi.  At xi=0 this reduces to the familiar pinhole relation
    f = (h/2) / tan(vfov/2).
    """
    half = math.radians(rig.vfov) / 2.0
    f = (rig.height / 2.0) * (rig.xi + math.cos(half)) / math.sin(half)
    return Intrinsics(f=f,
                      u0=(rig.width - 1) / 2.0,
                      v0=(rig.height - 1) / 2.0,
                      xi=rig.xi)


def project(points, intr: Intrinsics):
    """Project camera-frame points to pixels.

    Args:
        points: (..., 3) array of camera-frame points (any positive scale).
        intr: camera intrinsics.

    Returns:
        (pixels, valid): pixels is (..., 2); valid is a boolean mask, False
        where the point lies behind the usable cone (pixels are NaN there).
    """
    p = np.asarray(points, dtype=np.float64)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    norm = np.sqrt(x * x + y * y + z * z)
    denom = intr.xi * norm + z
    valid = denom > BEHIND_EPS * norm
    safe = np.where(valid, denom, 1.0)
    uv = np.stack([intr.f * x / safe + intr.u0,
                   intr.f * y / safe + intr.v0], axis=-1)
    uv = np.where(valid[..., None], uv, np.nan)
    return uv, valid


def unproject(pixels, intr: Intrinsics):
    """Invert the projection: pixels to unit camera-frame rays.

    Closed form; exact inverse of :func:`project` for xi in [0, 1], where
    the forward map is injective on its valid cone.  Always succeeds.
    """
    px = np.asarray(pixels, dtype=np.float64)
    mx = (px[..., 0] - intr.u0) / intr.f
    my = (px[..., 1] - intr.v0) / intr.f
    r2 = mx * mx + my * my
    t = (intr.xi + np.sqrt(1.0 + r2 * (1.0 - intr.xi * intr.xi))) / (1.0 + r2)
    d = np.stack([mx * t, my * t, t - intr.xi], axis=-1)
    # |d| == 1 analytically; renormalize to keep downstream dot products clean
    return d / np.linalg.norm(d, axis=-1, keepdims=True)


def rig_rotation(rig: CameraRig) -> np.ndarray:
    """Camera-to-world rotation: R = R_yaw @ R_pitch @ R_roll.

    Yaw turns about the world vertical, pitch about the camera x axis
    (positive looks up), roll about the camera z axis (positive turns
    projected up-vectors clockwise in image coordinates).
    """
    r = math.radians(rig.roll)
    p = math.radians(rig.pitch)
    y = math.radians(rig.yaw)
    cr, sr = math.cos(r), math.sin(r)
    cp, sp = math.cos(p), math.sin(p)
    cy, sy = math.cos(y), math.sin(y)
    roll_m = np.array([[cr, sr, 0.0],
                       [-sr, cr, 0.0],
                       [0.0, 0.0, 1.0]])
    pitch_m = np.array([[1.0, 0.0, 0.0],
                        [0.0, cp, -sp],
                        [0.0, sp, cp]])
    yaw_m = np.array([[cy, 0.0, sy],
                      [0.0, 1.0, 0.0],
                      [-sy, 0.0, cy]])
    return yaw_m @ pitch_m @ roll_m
