"""Per-pixel perspective fields: image-space up-vectors and latitude.

The up-vector at a pixel is the image direction in which a world point on
that pixel's ray moves when displaced against gravity; the latitude is the
elevation angle of the ray above the world horizontal plane.  Together
they describe how a view is tilted and distorted without revealing any
scene content.

Both quantities ignore yaw by construction: panning about the vertical
axis changes neither ray elevations nor the projected gravity direction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .camera import (CameraRig, WORLD_UP, intrinsics_from_rig, project,
                     rig_rotation, unproject)

# |latitude| above this is treated as degenerate: the ray is close enough
# to the vertical axis that the up direction is numerically meaningless.
DEGENERATE_LATITUDE = 89.9

# Fill value for up-vectors at degenerate pixels.
UP_FILL = (0.0, -1.0)

# Tangential up component below this means the ray is parallel to the
# vertical axis and no up direction exists at all.
_TANGENT_EPS = 1e-12

# World-space step used by the finite-difference up-vector route.
FD_STEP = 1e-6

DEFAULT_CONTOUR_LEVELS = tuple(float(l) for l in range(-75, 90, 15))


@dataclass(frozen=True)
class PerspectiveField:
    """Dense per-pixel field for one view.

    up: (H, W, 2) unit image-space up-vectors (fill (0, -1) where degenerate)
    latitude: (H, W) degrees in [-90, 90]
    degenerate_mask: (H, W) bool, True where |latitude| > 89.9
    """

    up: np.ndarray
    latitude: np.ndarray
    degenerate_mask: np.ndarray

    @property
    def width(self) -> int:
        return self.latitude.shape[1]

    @property
    def height(self) -> int:
        return self.latitude.shape[0]


def _field_terms(dirs: np.ndarray, rot: np.ndarray, xi: float):
    """Latitude (degrees) and unnormalized up direction for unit rays.

    ``dirs`` holds camera-frame unit rays, shape (..., 3).  The up
    direction comes from the projection Jacobian applied to the component
    of the world up axis tangential to the ray; the radial component
    projects to zero, so subtracting it only improves conditioning.

    Returns (latitude, up_unnormalized, tangential_norm).
    """
    up_cam = rot.T @ WORLD_UP
    sin_lat = np.clip(dirs @ up_cam, -1.0, 1.0)
    latitude = np.degrees(np.arcsin(sin_lat))
    tang = up_cam - sin_lat[..., None] * dirs
    tang_norm = np.linalg.norm(tang, axis=-1)

    x, y, z = dirs[..., 0], dirs[..., 1], dirs[..., 2]
    tx, ty, tz = tang[..., 0], tang[..., 1], tang[..., 2]
    # Jacobian of the unit-sphere projection at a unit ray, up to the
    # positive factor f / (xi + z)^2 which cannot change direction.
    denom = xi + z
    axial = xi * z + 1.0
    ju = (denom - xi * x * x) * tx - xi * x * y * ty - x * axial * tz
    jv = -xi * x * y * tx + (denom - xi * y * y) * ty - y * axial * tz
    return latitude, np.stack([ju, jv], axis=-1), tang_norm


def latitude_at(pixel, rig: CameraRig) -> float:
    """Elevation angle (degrees) of the ray through ``pixel``, positive above
    the horizon.  ``pixel`` may be fractional."""
    intr = intrinsics_from_rig(rig)
    d = unproject(np.asarray(pixel, dtype=np.float64), intr)
    latitude, _, _ = _field_terms(d, rig_rotation(rig), rig.xi)
    return float(latitude)


def up_vector_analytic(pixel, rig: CameraRig):
    """Unit image-space up-vector at ``pixel`` via the projection Jacobian.

    Returns (up, degenerate).  When the ray is parallel to the vertical
    axis no direction exists; the fill value is returned with the flag set.
    """
    intr = intrinsics_from_rig(rig)
    d = unproject(np.asarray(pixel, dtype=np.float64), intr)
    _, up, tang_norm = _field_terms(d, rig_rotation(rig), rig.xi)
    if tang_norm < _TANGENT_EPS:
        return np.array(UP_FILL), True
    return up / np.linalg.norm(up), False


def up_vector_fd(pixel, rig: CameraRig, step: float = FD_STEP):
    """Finite-difference up-vector: displace the world point against gravity
    and reproject.  Reference route for :func:`up_vector_analytic`.

    Returns (up, degenerate); degenerate when the two projections coincide.
    """
    intr = intrinsics_from_rig(rig)
    rot = rig_rotation(rig)
    d = unproject(np.asarray(pixel, dtype=np.float64), intr)
    point = d @ rot.T                      # world point at unit distance
    px0, _ = project(point @ rot, intr)
    px1, _ = project((point + step * WORLD_UP) @ rot, intr)
    delta = px1 - px0
    norm = np.linalg.norm(delta)
    if not np.isfinite(norm) or norm < _TANGENT_EPS:
        return np.array(UP_FILL), True
    return delta / norm, False


def compute_pf_map(rig: CameraRig) -> PerspectiveField:
    """Dense perspective field for every pixel of the rig's raster.

    Pure function of the rig; fully vectorized, deterministic, and safe to
    call from concurrent workers.
    """
    intr = intrinsics_from_rig(rig)
    u = np.arange(rig.width, dtype=np.float64)
    v = np.arange(rig.height, dtype=np.float64)
    uu, vv = np.meshgrid(u, v)
    dirs = unproject(np.stack([uu, vv], axis=-1), intr)

    latitude, up_raw, _ = _field_terms(dirs, rig_rotation(rig), rig.xi)
    mask = np.abs(latitude) > DEGENERATE_LATITUDE

    norm = np.linalg.norm(up_raw, axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        up = np.where(norm > 0.0, up_raw / norm, 0.0)
    up[mask] = UP_FILL
    return PerspectiveField(up=up, latitude=latitude, degenerate_mask=mask)


@dataclass(frozen=True)
class ContourLine:
    """One iso-latitude polyline in pixel coordinates, points (M, 2)."""

    level: float
    points: np.ndarray


@dataclass(frozen=True)
class FieldOverlay:
    """Downsampled field geometry for drawing: arrow anchors + directions
    on a regular grid, and iso-latitude contour polylines."""

    anchors: np.ndarray      # (N, 2) pixel positions
    directions: np.ndarray   # (N, 2) unit up-vectors
    contours: tuple[ContourLine, ...]
    grid: int


def make_overlay(field: PerspectiveField, grid: int,
                 levels=None) -> FieldOverlay:
    """Sample arrows every ``grid`` pixels and trace iso-latitude contours.

    Arrows sit at grid-cell centers; degenerate pixels contribute none.
    ``levels`` must be strictly increasing, within [-90, 90]; the default
    is every 15 degrees.
    """
    if grid < 4:
        raise ValueError(f"grid={grid}: arrow spacing must be >= 4 pixels")
    if levels is None:
        levels = DEFAULT_CONTOUR_LEVELS
    levels = [float(l) for l in levels]
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("contour levels must be strictly increasing")
    if levels and (levels[0] < -90.0 or levels[-1] > 90.0):
        raise ValueError("contour levels must lie within [-90, 90]")

    us = np.arange(grid // 2, field.width, grid)
    vs = np.arange(grid // 2, field.height, grid)
    anchors = []
    directions = []
    for v in vs:
        for u in us:
            if field.degenerate_mask[v, u]:
                continue
            anchors.append((float(u), float(v)))
            directions.append(field.up[v, u])
    anchors_arr = np.array(anchors, dtype=np.float64).reshape(-1, 2)
    directions_arr = np.array(directions, dtype=np.float64).reshape(-1, 2)

    from skimage import measure  # deferred: pulls scipy, slow import

    contours = []
    for level in levels:
        for polyline in measure.find_contours(field.latitude, level):
            # skimage returns (row, col); flip to (u, v)
            contours.append(ContourLine(level=level, points=polyline[:, ::-1].copy()))
    return FieldOverlay(anchors=anchors_arr, directions=directions_arr,
                        contours=tuple(contours), grid=int(grid))


def overlay_payload(rig: CameraRig, field: PerspectiveField,
                    overlay: FieldOverlay) -> dict:
    """JSON-ready overlay geometry, shared by the CLI and the service."""
    intr = intrinsics_from_rig(rig)
    return {
        "width": field.width,
        "height": field.height,
        "grid": overlay.grid,
        "center_latitude": latitude_at((intr.u0, intr.v0), rig),
        "arrows": [
            {"x": float(a[0]), "y": float(a[1]),
             "dx": float(d[0]), "dy": float(d[1])}
            for a, d in zip(overlay.anchors, overlay.directions)
        ],
        "contours": [
            {"level": line.level,
             "points": [[float(p[0]), float(p[1])] for p in line.points]}
            for line in overlay.contours
        ],
    }
