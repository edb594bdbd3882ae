"""Write the synthetic test panoramas to a directory.

Useful as dataset input when no real panoramas are at hand and for
eyeballing the renderer: the direction-coded panorama makes geometry
errors visible as color discontinuities, the stripe panorama puts a
one-pixel band exactly on the horizon.

Usage: python scripts/make_synthetic_panos.py --out panos/ [--width 1024]
"""

import argparse
from pathlib import Path

from pfcam import images, synthetic


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--width", type=int, default=1024,
                        help="panorama width in pixels (height is width/2)")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    panos = [
        synthetic.direction_coded_panorama(width=args.width),
        synthetic.gradient_panorama(width=args.width),
        synthetic.stripe_panorama(height=args.width // 2 - 1),
        synthetic.constant_panorama(width=args.width),
    ]
    for pano in panos:
        path = out / f"{pano.id}.png"
        images.save_png(path, pano.pixels)
        print(f"wrote {path} ({pano.width}x{pano.height})")


if __name__ == "__main__":
    main()
