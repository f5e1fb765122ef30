"""Command-line front end: ``python -m scsim <command> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from importlib import resources
from pathlib import Path

from .convert import d_to_s
from .core import Bitstream, Encoding, LengthMismatch, scc_counts, scc_from_counts, value
from .correlate import Decorrelator, IsolatorPair, desynchronizer_chain, synchronizer_chain
from .ops import OPERATORS
from .pgm import PgmError, read_pgm, write_pgm
from .pipeline import VARIANTS, PipelineConfig, run_pipeline
from .rng import RngConfig, RngError, parse_rng
from .sweep import correlation_sweep, ops_sweep

CIRCUITS = ("sync", "desync", "decorr", "isolator")


class CliError(Exception):
    pass


def default_image() -> Path:
    return Path(str(resources.files("scsim") / "data" / "brick64.pgm"))


def write_text(path: Path, text: str) -> None:
    """Atomic text write: a temp file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _rng(text: str) -> RngConfig:
    try:
        return parse_rng(text)
    except RngError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _default_x_rng(n: int) -> RngConfig:
    if n & (n - 1) == 0:
        return RngConfig("vdc", width=n.bit_length() - 1)
    return RngConfig("halton", base=2)


def cmd_gen(args) -> int:
    rng = args.rng or _default_x_rng(args.n)
    s = d_to_s(args.value, rng, args.n)
    print(s)
    if args.verbose:
        enc = Encoding[args.encoding.upper()]
        print(f"# ones={s.ones()} value={value(s, enc):.6g}", file=sys.stderr)
    return 0


def _read_streams(args) -> tuple[Bitstream, Bitstream]:
    lines = args.streams
    if not lines:
        lines = [ln.strip() for ln in sys.stdin if ln.strip()]
    if len(lines) != 2:
        raise CliError(f"expected two stream lines, got {len(lines)}")
    try:
        return Bitstream.from_str(lines[0]), Bitstream.from_str(lines[1])
    except ValueError as e:
        raise CliError(str(e)) from None


def cmd_scc(args) -> int:
    x, y = _read_streams(args)
    if len(x) != len(y):
        raise CliError(f"streams differ in length ({len(x)} vs {len(y)})")
    c = scc_counts(x, y)
    print(f"a={c.a} b={c.b} c={c.c} d={c.d}")
    v = scc_from_counts(*c)
    print(f"scc={v:+.3f}" if v else "scc=0.000")
    return 0


def build_circuit(args):
    if args.circuit == "sync":
        return synchronizer_chain(args.stages, args.depth, args.alternate)
    if args.circuit == "desync":
        return desynchronizer_chain(args.stages, args.depth)
    if args.flush:
        raise CliError("--flush applies to sync and desync only")
    if args.circuit == "decorr":
        return Decorrelator(args.depth if args.depth_given else 4, args.rng_a, args.rng_b)
    return IsolatorPair()


def _emit(text: str, summary: dict, out: Path | None) -> None:
    if out is not None:
        write_text(out, text)
    print(json.dumps(summary))


def cmd_sweep_correlate(args) -> int:
    args.depth_given = args.depth is not None
    args.depth = args.depth or 1
    circuit = build_circuit(args)
    rng_x = args.rng_x or _default_x_rng(args.n)
    rng_y = args.rng_y or RngConfig("halton", base=3)
    rep = correlation_sweep(circuit, rng_x, rng_y, args.n, flush=args.flush)
    summary = {"circuit": args.circuit, "rng_x": str(rng_x), "rng_y": str(rng_y), "n": args.n,
               **rep.summary()}
    _emit(rep.to_csv(), summary, args.out)
    return 0


def cmd_sweep_ops(args) -> int:
    rng_x = args.rng_x or _default_x_rng(args.n)
    rng_y = args.rng_y or RngConfig("halton", base=3)
    rep = ops_sweep(args.op, rng_x, rng_y, args.n, args.depth, args.rng_sel)
    summary = {"rng_x": str(rng_x), "rng_y": str(rng_y), "n": args.n, **rep.summary()}
    _emit(rep.to_csv(), summary, args.out)
    return 0


def cmd_pipeline(args) -> int:
    img = read_pgm(args.input or default_image())
    cfg = PipelineConfig(n=args.n, tile=args.tile, variant=args.variant, depth=args.depth,
                         flush=args.flush)
    out, report = run_pipeline(img, cfg)
    if args.out is not None:
        write_pgm(args.out, out)
    text = json.dumps(report.to_dict())
    if args.report is not None:
        write_text(args.report, text + "\n")
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scsim", description="Stochastic-computing circuit simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="D/S-convert one value and print the stream")
    g.add_argument("--rng", type=_rng, help="generator, e.g. vdc:w=8 (default VDC of width log2 n)")
    g.add_argument("--n", type=_positive, default=256)
    g.add_argument("--value", type=int, required=True)
    g.add_argument("--encoding", choices=["unipolar", "bipolar"], default="unipolar")
    g.add_argument("-v", "--verbose", action="store_true")
    g.set_defaults(fn=cmd_gen)

    s = sub.add_parser("scc", help="SCC of two streams (arguments or two stdin lines)")
    s.add_argument("streams", nargs="*")
    s.set_defaults(fn=cmd_scc)

    c = sub.add_parser("sweep-correlate", help="all-pairs correlation sweep through a circuit")
    c.add_argument("--circuit", choices=CIRCUITS, required=True)
    c.add_argument("--depth", type=_positive, default=None,
                   help="save depth (default 1; decorrelator buffer default 4)")
    c.add_argument("--stages", type=_positive, default=1)
    c.add_argument("--alternate", action="store_true",
                   help="alternate initial offsets along a synchronizer chain")
    c.add_argument("--flush", action="store_true")
    c.add_argument("--rng-x", type=_rng)
    c.add_argument("--rng-y", type=_rng)
    c.add_argument("--rng-a", type=_rng, default=RngConfig("halton", base=2),
                   help="decorrelator buffer generator for X")
    c.add_argument("--rng-b", type=_rng, default=RngConfig("halton", base=3),
                   help="decorrelator buffer generator for Y")
    c.add_argument("--n", type=_positive, default=256)
    c.add_argument("--out", type=Path, help="CSV destination")
    c.set_defaults(fn=cmd_sweep_correlate)

    o = sub.add_parser("sweep-ops", help="all-pairs accuracy sweep of an operator")
    o.add_argument("--op", choices=sorted(OPERATORS), required=True)
    o.add_argument("--depth", type=_positive, default=1)
    o.add_argument("--rng-x", type=_rng)
    o.add_argument("--rng-y", type=_rng)
    o.add_argument("--rng-sel", type=_rng, help="scaled-add select generator")
    o.add_argument("--n", type=_positive, default=256)
    o.add_argument("--out", type=Path, help="CSV destination")
    o.set_defaults(fn=cmd_sweep_ops)

    q = sub.add_parser("pipeline", help="blur + edge-detect an image")
    q.add_argument("--input", type=Path, help="PGM image (default: bundled 64x64 test image)")
    q.add_argument("--variant", choices=VARIANTS, default="sync")
    q.add_argument("--n", type=_positive, default=256)
    q.add_argument("--tile", type=_positive, default=10)
    q.add_argument("--depth", type=_positive, default=1)
    q.add_argument("--flush", action="store_true")
    q.add_argument("--out", type=Path, help="output PGM")
    q.add_argument("--report", type=Path, help="JSON report destination")
    q.set_defaults(fn=cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, PgmError, LengthMismatch, ValueError, OSError) as e:
        print(f"scsim {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
