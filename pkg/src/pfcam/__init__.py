"""Camera-view representation toolkit.

Unified spherical camera model, per-pixel perspective fields (up-vectors
and latitude), their fixed 8-bit RGB encoding, equirectangular panorama
crop rendering, seeded dataset generation, a CLI and a preview service.
"""

from .camera import (CameraRig, Intrinsics, ParameterError, WORLD_UP,
                     intrinsics_from_rig, project, rig_rotation, unproject)
from .codec import EncodedPFMap
from .dataset import (CropSample, DatasetError, DatasetManifest, SamplePlan,
                      attach_prompts, generate, plan_samples, read_manifest)
from .field import (FieldOverlay, PerspectiveField, compute_pf_map,
                    latitude_at, make_overlay, up_vector_analytic,
                    up_vector_fd)
from .pano import CropImage, Panorama, equirect_lookup, render_crop

__version__ = "0.1.0"

__all__ = [
    "CameraRig", "Intrinsics", "ParameterError", "WORLD_UP",
    "intrinsics_from_rig", "project", "unproject", "rig_rotation",
    "PerspectiveField", "compute_pf_map", "latitude_at",
    "up_vector_analytic", "up_vector_fd", "FieldOverlay", "make_overlay",
    "EncodedPFMap", "Panorama", "CropImage", "equirect_lookup",
    "render_crop", "SamplePlan", "CropSample", "DatasetManifest",
    "DatasetError", "plan_samples", "generate", "attach_prompts",
    "read_manifest", "__version__",
]
