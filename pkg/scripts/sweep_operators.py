"""Operator accuracy: mean absolute error and bias over all value pairs."""
import argparse

from scsim.ops import OPERATORS
from scsim.rng import parse_rng
from scsim.sweep import ops_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=256)
    ap.add_argument("--rng-x", type=parse_rng, default=parse_rng("vdc:w=8"))
    ap.add_argument("--rng-y", type=parse_rng, default=parse_rng("halton:base=3"))
    ap.add_argument("--depth", type=int, nargs="+", default=[1])
    args = ap.parse_args()
    print(f"{'operator':14} {'D':>2} {'mean |err|':>10} {'mean bias':>10}")
    for op in OPERATORS:
        for d in args.depth if op.startswith(("sync", "desync")) else args.depth[:1]:
            r = ops_sweep(op, args.rng_x, args.rng_y, args.n, d)
            print(f"{op:14} {d:2d} {r.mean_abs_error:10.5f} {r.mean_bias:+10.5f}")


if __name__ == "__main__":
    main()
