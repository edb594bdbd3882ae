"""Render a contact sheet sweeping one rig parameter.

Each column holds one parameter value; the top row shows the panorama
crop, the bottom row the encoded field map for the same rig.  Handy for
sanity-checking how roll / pitch / vfov / xi reshape the view and its
conditioning map side by side.

Usage:
    python scripts/parameter_sweep.py --pano panos/gradient.png \
        --param xi --values 0,0.25,0.5,0.75,1 --out sweep_xi.png
"""

import argparse
from dataclasses import replace

import numpy as np

from pfcam import codec, field, images, pano
from pfcam.camera import CameraRig

PARAMS = ("roll", "pitch", "vfov", "xi", "yaw")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pano", required=True, help="panorama image")
    parser.add_argument("--param", choices=PARAMS, default="xi")
    parser.add_argument("--values", default=None,
                        help="comma-separated values (default: 5 across the range)")
    parser.add_argument("--size", type=int, default=256, help="tile size in pixels")
    parser.add_argument("--out", default="sweep.png")
    args = parser.parse_args()

    defaults = {"roll": (-60.0, 60.0), "pitch": (-60.0, 60.0),
                "vfov": (15.0, 140.0), "xi": (0.0, 1.0), "yaw": (0.0, 288.0)}
    if args.values:
        values = [float(v) for v in args.values.split(",")]
    else:
        lo, hi = defaults[args.param]
        values = list(np.linspace(lo, hi, 5))

    panorama = pano.Panorama.from_file(args.pano)
    base = CameraRig(pitch=15.0, vfov=90.0, width=args.size, height=args.size)
    tiles_top = []
    tiles_bottom = []
    for value in values:
        rig = replace(base, **{args.param: value})
        tiles_top.append(pano.render_crop(rig, panorama).pixels)
        tiles_bottom.append(codec.encode(field.compute_pf_map(rig)).pixels)
        print(f"{args.param}={value:g} rendered")

    sheet = np.concatenate(
        [np.concatenate(tiles_top, axis=1), np.concatenate(tiles_bottom, axis=1)],
        axis=0)
    images.save_png(args.out, sheet)
    print(f"wrote {args.out} ({sheet.shape[1]}x{sheet.shape[0]})")


if __name__ == "__main__":
    main()
