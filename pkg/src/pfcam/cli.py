"""Command-line front door.

Subcommands: pfmap, crop, dataset, encode, decode, overlay, serve.
All angles are degrees.  Exit codes: 0 success, 1 usage error (bad flag
or out-of-range value), 2 runtime error (missing files, failed IO).
Outputs are byte-identical to the equivalent library calls.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import __version__, codec, images
from .camera import CameraRig, ParameterError, intrinsics_from_rig
from .dataset import DatasetError, generate
from .field import compute_pf_map, latitude_at, make_overlay, overlay_payload
from .pano import Panorama, render_crop


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse would exit 2 here; our contract reserves 2 for runtime
        raise UsageError(message)


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise UsageError(f"--size expects WxH (e.g. 1024x1024), got {text!r}") from None


def _add_rig_flags(sub, with_yaw: bool = False) -> None:
    sub.add_argument("--roll", type=float, default=0.0,
                     help="roll in degrees, positive turns up-vectors clockwise; range (-90, 90)")
    sub.add_argument("--pitch", type=float, default=0.0,
                     help="pitch in degrees, positive looks up; range (-90, 90)")
    sub.add_argument("--vfov", type=float, default=90.0,
                     help="vertical field of view in degrees; range [15, 140]")
    sub.add_argument("--xi", type=float, default=0.0,
                     help="distortion parameter, 0 = pinhole; range [0, 1]")
    if with_yaw:
        sub.add_argument("--yaw", type=float, default=0.0,
                         help="yaw in degrees, pans east inside the panorama; range [0, 360)")
    sub.add_argument("--size", default="1024x1024",
                     help="output raster as WxH pixels (default 1024x1024)")


def _rig_from_args(args) -> CameraRig:
    width, height = _parse_size(args.size)
    return CameraRig(roll=args.roll, pitch=args.pitch, vfov=args.vfov,
                     xi=args.xi, yaw=getattr(args, "yaw", 0.0),
                     width=width, height=height)


def cmd_pfmap(args) -> int:
    rig = _rig_from_args(args)
    field = compute_pf_map(rig)
    codec.save(args.out, codec.encode(field))
    center = latitude_at((intrinsics_from_rig(rig).u0, intrinsics_from_rig(rig).v0), rig)
    degenerate = int(np.count_nonzero(field.degenerate_mask))
    print(f"wrote {args.out} ({rig.width}x{rig.height}); "
          f"center latitude {center:+.3f} deg; {degenerate} degenerate pixels")
    return 0


def cmd_crop(args) -> int:
    rig = _rig_from_args(args)
    pano = Panorama.from_file(args.pano)
    crop = render_crop(rig, pano)
    images.save_png(args.out, crop.pixels)
    print(f"wrote {args.out} ({rig.width}x{rig.height}) from {pano.id!r}")
    if args.pfmap:
        codec.save(args.pfmap, codec.encode(compute_pf_map(rig)))
        print(f"wrote {args.pfmap}")
    return 0


def cmd_dataset(args) -> int:
    manifest = generate(args.panos, args.out, seed=args.seed,
                        resolution=args.resolution, max_workers=args.workers)
    print(f"wrote {len(manifest.samples)} samples to {args.out} "
          f"({len(manifest.errors)} panoramas skipped)")
    return 0


def cmd_encode(args) -> int:
    # Re-quantize onto the canonical lattice: decode then encode.
    encoded = codec.encode(codec.decode(codec.load(args.input)))
    codec.save(args.out, encoded)
    print(f"wrote {args.out} ({encoded.width}x{encoded.height})")
    return 0


def cmd_decode(args) -> int:
    field = codec.decode(codec.load(args.input))
    h, w = field.latitude.shape
    center = float(field.latitude[h // 2, w // 2])
    degenerate = int(np.count_nonzero(field.degenerate_mask))
    summary = {
        "width": w, "height": h,
        "center_latitude": center,
        "latitude_min": float(field.latitude.min()),
        "latitude_max": float(field.latitude.max()),
        "degenerate_pixels": degenerate,
    }
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(summary, fh, indent=2)
            fh.write("\n")
    print(f"{args.input}: {w}x{h}; center latitude {center:+.3f} deg; "
          f"{degenerate} degenerate pixels")
    return 0


def cmd_overlay(args) -> int:
    rig = _rig_from_args(args)
    field = compute_pf_map(rig)
    levels = None
    if args.levels:
        try:
            levels = [float(part) for part in args.levels.split(",")]
        except ValueError:
            raise UsageError(f"--levels expects comma-separated degrees, got {args.levels!r}") from None
    try:
        overlay = make_overlay(field, grid=args.grid, levels=levels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = overlay_payload(rig, field, overlay)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    print(f"wrote {args.out}: {len(payload['arrows'])} arrows, "
          f"{len(payload['contours'])} contour lines")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(panos_dir=args.panos)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="pfcam",
                     description="Camera-view toolkit: perspective-field maps, "
                                 "panorama crops, dataset generation, preview service.")
    parser.add_argument("--version", action="version", version=f"pfcam {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("pfmap", help="render an encoded perspective-field map")
    _add_rig_flags(sub)
    sub.add_argument("--out", default="pfmap.png", help="output PNG path")
    sub.set_defaults(func=cmd_pfmap)

    sub = subs.add_parser("crop", help="render a perspective crop from a panorama")
    _add_rig_flags(sub, with_yaw=True)
    sub.add_argument("--pano", required=True, help="panorama image (PNG or JPEG, 2:1)")
    sub.add_argument("--out", default="crop.png", help="output PNG path")
    sub.add_argument("--pfmap", default=None,
                     help="also write the matching encoded field map here")
    sub.set_defaults(func=cmd_crop)

    sub = subs.add_parser("dataset", help="generate a crop + field-map dataset")
    sub.add_argument("--panos", required=True, help="directory of input panoramas")
    sub.add_argument("--out", required=True, help="output dataset directory")
    sub.add_argument("--seed", type=int, default=0, help="global seed (default 0)")
    sub.add_argument("--resolution", type=int, default=1024,
                     help="square crop resolution in pixels (default 1024)")
    sub.add_argument("--workers", type=int, default=None,
                     help="panoramas processed in parallel (default: cpu count)")
    sub.set_defaults(func=cmd_dataset)

    sub = subs.add_parser("encode", help="re-quantize an encoded map onto the canonical lattice")
    sub.add_argument("input", help="encoded field map PNG")
    sub.add_argument("--out", default="encoded.png", help="output PNG path")
    sub.set_defaults(func=cmd_encode)

    sub = subs.add_parser("decode", help="decode an encoded map and print a summary")
    sub.add_argument("input", help="encoded field map PNG")
    sub.add_argument("--json", default=None, help="also write the summary as JSON here")
    sub.set_defaults(func=cmd_decode)

    sub = subs.add_parser("overlay", help="export arrow/contour overlay geometry as JSON")
    _add_rig_flags(sub)
    sub.add_argument("--grid", type=int, default=64, help="arrow spacing in pixels (>= 4)")
    sub.add_argument("--levels", default=None,
                     help="comma-separated contour latitudes in degrees (default every 15)")
    sub.add_argument("--out", default="overlay.json", help="output JSON path")
    sub.set_defaults(func=cmd_overlay)

    sub = subs.add_parser("serve", help="run the local preview service")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--port", type=int, default=8000)
    sub.add_argument("--panos", default=None, help="preload panoramas from this directory")
    sub.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("PFCAM_LOG_LEVEL", "WARNING").upper())
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"error: --{exc.param}: {exc}", file=sys.stderr)
        return 1
    except (OSError, DatasetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
