"""Micro-benchmarks for the hot paths.

Reports wall time for projection round trips, field-map computation,
panorama crop rendering and codec passes at a few raster sizes.  Run on
a quiet machine; numbers are medians of --repeat runs.

Usage: python scripts/benchmark.py [--sizes 256,512,1024] [--repeat 5]
"""

import argparse
import statistics
import time

import numpy as np

from pfcam import codec, field, pano, synthetic
from pfcam.camera import CameraRig, Intrinsics, project, unproject


def timed(fn, repeat: int) -> float:
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="256,512,1024")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    rng = np.random.default_rng(0)
    intr = Intrinsics(f=600.0, u0=511.5, v0=511.5, xi=0.8)
    px = rng.uniform(0.0, 1023.0, size=(1_000_000, 2))
    t = timed(lambda: project(unproject(px, intr), intr), args.repeat)
    print(f"projection round trip, 1M rays:        {t * 1000:8.1f} ms")

    panorama = synthetic.direction_coded_panorama(width=2048)
    for size in sizes:
        rig = CameraRig(roll=20.0, pitch=15.0, vfov=90.0, xi=0.5,
                        width=size, height=size)
        t_field = timed(lambda: field.compute_pf_map(rig), args.repeat)
        pf = field.compute_pf_map(rig)
        t_codec = timed(lambda: codec.decode(codec.encode(pf)), args.repeat)
        t_crop = timed(lambda: pano.render_crop(rig, panorama), args.repeat)
        print(f"{size}x{size}: field map {t_field * 1000:7.1f} ms | "
              f"codec round trip {t_codec * 1000:6.1f} ms | "
              f"crop render {t_crop * 1000:7.1f} ms")


if __name__ == "__main__":
    main()
