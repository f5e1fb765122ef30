"""Blur + edge-detect accuracy for the three correlation-handling variants."""
import argparse
from pathlib import Path

from scsim.cli import default_image
from scsim.pgm import read_pgm, write_pgm
from scsim.pipeline import VARIANTS, PipelineConfig, run_pipeline


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--input", type=Path, default=None)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--tile", type=int, default=10)
    ap.add_argument("--out-dir", type=Path, help="write one edge map per variant")
    args = ap.parse_args()
    img = read_pgm(args.input or default_image())
    print(f"image {img.width}x{img.height}, N={args.n}, tile={args.tile}")
    for v in VARIANTS:
        out, rep = run_pipeline(img, PipelineConfig(n=args.n, tile=args.tile, variant=v))
        psnr = "inf" if rep.psnr is None else f"{rep.psnr:.2f}"
        print(f"{v:6} mae={rep.mae:.4f} psnr={psnr} dB ({rep.seconds:.2f}s)")
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            write_pgm(args.out_dir / f"edges_{v}.pgm", out)


if __name__ == "__main__":
    main()
