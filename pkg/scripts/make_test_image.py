"""Build the 64x64 grayscale test image used by the pipeline experiments.

Nearest-neighbour downsample of scikit-image's ``brick`` sample, written as
binary PGM.  Needs scikit-image (not a runtime dependency).
"""
import argparse
from pathlib import Path

import numpy as np
from skimage import data, transform

from scsim.pgm import GrayImage, write_pgm


def make(size: int = 64) -> GrayImage:
    im = transform.resize(data.brick(), (size, size), anti_aliasing=False, order=0,
                          preserve_range=True)
    return GrayImage(np.clip(np.rint(im), 0, 255).astype(np.uint8))


def main():
    root = Path(__file__).resolve().parent.parent
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=64)
    ap.add_argument("--out", nargs="*", type=Path,
                    default=[root / "src/scsim/data/brick64.pgm", root / "tests/data/brick64.pgm"])
    args = ap.parse_args()
    img = make(args.size)
    for path in args.out:
        write_pgm(path, img)
        print(f"wrote {path} ({img.width}x{img.height})")


if __name__ == "__main__":
    main()
