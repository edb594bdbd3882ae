from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pfcam import images, synthetic


@pytest.fixture(scope="session")
def coded_pano():
    """Panorama whose RGB channels encode the viewing direction per pixel."""
    return synthetic.direction_coded_panorama(width=2048)


@pytest.fixture(scope="session")
def small_coded_pano():
    return synthetic.direction_coded_panorama(width=512)


@pytest.fixture()
def pano_dir(tmp_path):
    """Directory with three small synthetic panoramas on disk."""
    root = tmp_path / "panos"
    root.mkdir()
    rng = np.random.default_rng(11)
    images.save_png(root / "coded.png", synthetic.direction_coded_panorama(width=512).pixels)
    images.save_png(root / "gradient.png", synthetic.gradient_panorama(width=512).pixels)
    noise = rng.integers(0, 256, size=(256, 512, 3), dtype=np.uint8)
    images.save_png(root / "noise.png", noise)
    return root
