"""Seeded ground-truth dataset generation from panorama collections.

Every panorama yields 24 crops: its 360 degrees of yaw are split into six
60-degree regions, and each region gets four rigs covering the
small/large vertical FoV x low/high distortion combinations.  Yaw and
pitch are drawn once per region and shared by its four rigs; roll is
drawn independently per rig.

Sampling ranges:
    yaw    region r: [60r, 60(r+1))          pitch  (-90, 90)
    vfov   small [15, 60), large [60, 140]   xi     low (0, 0.5), high [0.5, 1)
    roll   (-90, 90)

Randomness is counter-based and fully reproducible: each panorama gets
its own Philox stream keyed by SHA-256("<seed>:<panorama id>") truncated
to 64 bits, so adding or removing panoramas never shifts anyone else's
draws.  The in-region draw order is fixed: yaw, pitch, vfov small, vfov
large, xi low, xi high, then the four rolls in combination order
(small-low, small-high, large-low, large-high).
"""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from PIL import Image

from . import codec, images
from .camera import CameraRig
from .field import compute_pf_map
from .pano import Panorama, render_crop

logger = logging.getLogger(__name__)

REGIONS = 6
COMBOS = (("small", "low"), ("small", "high"), ("large", "low"), ("large", "high"))
RIGS_PER_PANORAMA = REGIONS * len(COMBOS)

VFOV_SMALL = (15.0, 60.0)
VFOV_LARGE = (60.0, 140.0)
XI_LOW = (0.0, 0.5)
XI_HIGH = (0.5, 1.0)

PANORAMA_SUFFIXES = (".png", ".jpg", ".jpeg")


class DatasetError(RuntimeError):
    pass


@dataclass(frozen=True)
class PlannedRig:
    region: int
    combo: str            # "small-low", "small-high", "large-low", "large-high"
    rig: CameraRig


@dataclass(frozen=True)
class SamplePlan:
    """All 24 rigs planned for one panorama, in emission order."""

    pano_id: str
    seed: int             # 64-bit per-panorama stream key
    rigs: tuple[PlannedRig, ...]


@dataclass(frozen=True)
class CropSample:
    id: str
    rig: CameraRig
    image: str            # path relative to the dataset root
    pfmap: str
    prompt: str | None
    source_pano: str
    seed: int
    region: int
    combo: str


@dataclass(frozen=True)
class DatasetManifest:
    samples: tuple[CropSample, ...]
    tool_version: str
    seed: int
    errors: tuple[dict, ...] = ()


def stream_seed(global_seed: int, pano_id: str) -> int:
    """64-bit Philox key for one panorama's draw stream."""
    digest = hashlib.sha256(f"{global_seed}:{pano_id}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _draw(rng, lo: float, hi: float, *, lo_open: bool = False,
          hi_open: bool = True) -> float:
    # uniform() samples [lo, hi) but may land on either bound after float
    # rounding; redraw until the draw respects the interval's openness.
    while True:
        value = float(rng.uniform(lo, hi))
        if lo_open and value <= lo:
            continue
        if not lo_open and value < lo:
            continue
        if hi_open and value >= hi:
            continue
        if not hi_open and value > hi:
            continue
        return value


def plan_for_panorama(pano_id: str, global_seed: int,
                      resolution: int = 1024) -> SamplePlan:
    """Plan the 24 rigs for one panorama; pure function of (id, seed)."""
    seed = stream_seed(global_seed, pano_id)
    rng = np.random.Generator(np.random.Philox(key=seed))
    rigs = []
    for region in range(REGIONS):
        yaw = _draw(rng, 60.0 * region, 60.0 * (region + 1))
        pitch = _draw(rng, -90.0, 90.0, lo_open=True)
        vfov = {"small": _draw(rng, *VFOV_SMALL),
                "large": _draw(rng, *VFOV_LARGE, hi_open=False)}
        xi = {"low": _draw(rng, *XI_LOW, lo_open=True),
              "high": _draw(rng, *XI_HIGH)}
        for vfov_bucket, xi_bucket in COMBOS:
            roll = _draw(rng, -90.0, 90.0, lo_open=True)
            rigs.append(PlannedRig(
                region=region,
                combo=f"{vfov_bucket}-{xi_bucket}",
                rig=CameraRig(roll=roll, pitch=pitch, vfov=vfov[vfov_bucket],
                              xi=xi[xi_bucket], yaw=yaw,
                              width=resolution, height=resolution)))
    return SamplePlan(pano_id=pano_id, seed=seed, rigs=tuple(rigs))


def plan_samples(pano_ids, global_seed: int,
                 resolution: int = 1024) -> list[SamplePlan]:
    return [plan_for_panorama(pid, global_seed, resolution) for pid in pano_ids]


def list_panorama_files(panos_dir) -> list[Path]:
    root = Path(panos_dir)
    if not root.is_dir():
        raise DatasetError(f"panorama directory not found: {root}")
    files = [p for p in root.iterdir()
             if p.is_file() and p.suffix.lower() in PANORAMA_SUFFIXES]
    return sorted(files, key=lambda p: p.name)


def _output_is_valid(path: Path, resolution: int) -> bool:
    if not path.is_file():
        return False
    try:
        with Image.open(path) as img:
            return img.size == (resolution, resolution)
    except Exception:
        return False


def _process_panorama(path: Path, out: Path, global_seed: int, resolution: int):
    """Render one panorama's 24 crops + maps.  Returns (samples, error)."""
    try:
        pano = Panorama.from_file(path)
        plan = plan_for_panorama(pano.id, global_seed, resolution)
        samples = []
        for index, planned in enumerate(plan.rigs):
            sample_id = f"{pano.id}_{index:02d}"
            image_rel = f"images/{sample_id}.png"
            pfmap_rel = f"pfmaps/{sample_id}.png"
            image_path = out / image_rel
            pfmap_path = out / pfmap_rel
            if not _output_is_valid(image_path, resolution):
                crop = render_crop(planned.rig, pano)
                images.save_png(image_path, crop.pixels)
            if not _output_is_valid(pfmap_path, resolution):
                encoded = codec.encode(compute_pf_map(planned.rig))
                codec.save(pfmap_path, encoded)
            samples.append(CropSample(
                id=sample_id, rig=planned.rig, image=image_rel, pfmap=pfmap_rel,
                prompt=None, source_pano=path.name, seed=plan.seed,
                region=planned.region, combo=planned.combo))
        return samples, None
    except Exception as exc:  # keep the batch alive; record and move on
        logger.warning("skipping panorama %s: %s", path.name, exc)
        return None, {"source_pano": path.name, "error": str(exc)}


def generate(panos_dir, out_dir, seed: int, resolution: int = 1024,
             max_workers: int | None = None) -> DatasetManifest:
    """Generate the dataset tree: images/, pfmaps/, manifest.jsonl, errors.jsonl.

    Deterministic and resumable: reruns with the same inputs produce a
    byte-identical tree, and already-valid outputs are not re-rendered.
    Panoramas are processed concurrently; the manifest is assembled in
    sorted-filename order regardless of completion order.
    """
    from . import __version__

    files = list_panorama_files(panos_dir)
    if not files:
        raise DatasetError(f"no input panoramas in {panos_dir}")
    out = Path(out_dir)
    (out / "images").mkdir(parents=True, exist_ok=True)
    (out / "pfmaps").mkdir(parents=True, exist_ok=True)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(
            lambda p: _process_panorama(p, out, seed, resolution), files))

    samples = []
    errors = []
    for batch, error in results:
        if error is not None:
            errors.append(error)
        else:
            samples.extend(batch)

    manifest = DatasetManifest(samples=tuple(samples), tool_version=__version__,
                               seed=seed, errors=tuple(errors))
    write_manifest(manifest, out, resolution=resolution)
    return manifest


def _row(sample: CropSample) -> dict:
    rig = sample.rig
    return {
        "id": sample.id,
        "image": sample.image,
        "pfmap": sample.pfmap,
        "prompt": sample.prompt,
        "omega": {"roll": rig.roll, "pitch": rig.pitch, "vfov": rig.vfov,
                  "xi": rig.xi, "yaw": rig.yaw},
        "source_pano": sample.source_pano,
        "seed": sample.seed,
    }


def write_manifest(manifest: DatasetManifest, out_dir,
                   resolution: int = 1024) -> None:
    """Write manifest.jsonl, errors.jsonl and meta.json (UTF-8, LF)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "manifest.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for sample in manifest.samples:
            fh.write(json.dumps(_row(sample), ensure_ascii=False) + "\n")
    with open(out / "errors.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        for error in manifest.errors:
            fh.write(json.dumps(error, ensure_ascii=False) + "\n")
    meta = {"tool_version": manifest.tool_version, "seed": manifest.seed,
            "resolution": resolution, "samples": len(manifest.samples)}
    with open(out / "meta.json", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(meta, ensure_ascii=False, indent=2) + "\n")


def _bucket(value: float, small: tuple, tag_lo: str, tag_hi: str) -> str:
    return tag_lo if value < small[1] else tag_hi


def read_manifest(out_dir) -> DatasetManifest:
    """Load a manifest written by :func:`write_manifest`."""
    out = Path(out_dir)
    meta_path = out / "meta.json"
    meta = json.loads(meta_path.read_text(encoding="utf-8")) if meta_path.is_file() else {}
    resolution = int(meta.get("resolution", 1024))

    samples = []
    with open(out / "manifest.jsonl", encoding="utf-8") as fh:
        for line in fh:
            row = json.loads(line)
            omega = row["omega"]
            rig = CameraRig(width=resolution, height=resolution, **omega)
            samples.append(CropSample(
                id=row["id"], rig=rig, image=row["image"], pfmap=row["pfmap"],
                prompt=row["prompt"], source_pano=row["source_pano"],
                seed=row["seed"], region=int(omega["yaw"] // 60),
                combo=f"{_bucket(omega['vfov'], VFOV_SMALL, 'small', 'large')}-"
                      f"{_bucket(omega['xi'], XI_LOW, 'low', 'high')}"))
    errors = []
    errors_path = out / "errors.jsonl"
    if errors_path.is_file():
        with open(errors_path, encoding="utf-8") as fh:
            errors = [json.loads(line) for line in fh if line.strip()]
    return DatasetManifest(samples=tuple(samples),
                           tool_version=str(meta.get("tool_version", "")),
                           seed=int(meta.get("seed", 0)), errors=tuple(errors))


def attach_prompts(manifest: DatasetManifest, prompts: dict) -> DatasetManifest:
    """Fill prompt fields from an id -> text mapping.

    Every key must name an existing sample; unknown ids raise with the
    full offender list.  Empty-string prompts are legitimate values.
    """
    known = {sample.id for sample in manifest.samples}
    unknown = sorted(set(prompts) - known)
    if unknown:
        raise DatasetError(f"unknown sample ids: {', '.join(unknown)}")
    updated = tuple(
        replace(sample, prompt=prompts[sample.id]) if sample.id in prompts else sample
        for sample in manifest.samples)
    return replace(manifest, samples=updated)
