"""Tiled Gaussian-blur -> Roberts-cross edge detector built from SC gates.

Each tile of ``T x T`` output pixels is computed from a ``(T+3) x (T+3)``
clamp-to-edge pixel halo: the blur stage yields ``(T+1) x (T+1)`` blurred
streams and the edge stage consumes their 2x2 neighbourhoods.

Blur is a 16-leg multiplexer over the 3x3 neighbourhood with the binomial
kernel ``[1 2 1; 2 4 2; 1 2 1] / 16``: tap ``(i, j)`` owns ``K[i, j]`` legs.
Every tap position is D/S-converted with its own generator so the nine
mux inputs are mutually uncorrelated.  The edge stage computes
``0.5 * (|a - d| + |b - c|)`` with two XOR gates and a MUX; XOR only
subtracts correctly for positively correlated operands, which is what the
``regen`` and ``sync`` variants provide.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .convert import default_regen_config, generate, regenerate_batch
from .correlate import Synchronizer
from .pgm import GrayImage
from .rng import RngConfig

KERNEL = np.array([[1, 2, 1], [2, 4, 2], [1, 2, 1]])
TAPS = [(i, j) for i in range(3) for j in range(3)]
# mux leg -> index into TAPS
LEG_TAP = np.array([k for k, (i, j) in enumerate(TAPS) for _ in range(KERNEL[i, j])])
VARIANTS = ("none", "regen", "sync")
TAP_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23)


def _default_taps() -> tuple[RngConfig, ...]:
    return tuple(RngConfig("halton", base=b) for b in TAP_BASES)


@dataclass(frozen=True)
class PipelineConfig:
    n: int = 256
    tile: int = 10
    variant: str = "sync"
    depth: int = 1
    flush: bool = False
    tap_rngs: tuple[RngConfig, ...] = field(default_factory=_default_taps)
    gb_select: RngConfig = RngConfig("vdc", width=4, start=0)
    ed_select: RngConfig = RngConfig("halton", base=29)
    regen_rng: RngConfig | None = None  # None: VDC for power-of-two n

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.tile < 2:
            raise ValueError("tile size must be >= 2")
        if self.n < 2:
            raise ValueError("stream length must be >= 2")
        if self.depth < 1:
            raise ValueError("save depth must be >= 1")
        if len(self.tap_rngs) != 9:
            raise ValueError("need one generator per 3x3 kernel tap")
        if len(set(self.tap_rngs)) != 9:
            raise ValueError("tap generators must be distinct")
        pow2 = self.n & (self.n - 1) == 0
        for cfg in (*self.tap_rngs, self.ed_select, self.regen):
            if cfg.kind == "vdc" and (not pow2 or cfg.native_range != self.n):
                raise ValueError(f"{cfg} needs n == 2**w (n = {self.n})")

    @property
    def regen(self) -> RngConfig:
        return self.regen_rng or default_regen_config(self.n)

    def select_legs(self) -> np.ndarray:
        """Blur mux leg chosen on each cycle."""
        return self.gb_select.sequence(self.n, len(LEG_TAP))

    def ed_select_stream(self) -> np.ndarray:
        """Half-density select for the edge-stage scaled add."""
        return generate([self.n // 2], self.ed_select, self.n)[0]


@dataclass
class PipelineReport:
    variant: str
    n: int
    tile: int
    mae: float
    psnr: float | None
    seconds: float

    def to_dict(self) -> dict:
        return asdict(self)


def quantize(pixels: np.ndarray, n: int) -> np.ndarray:
    """8-bit intensities -> integers in [0, n], rounded half up."""
    p = np.asarray(pixels, dtype=np.int64)
    return (2 * p * n + 255) // 510


def pixel_streams(values: np.ndarray, cfg: PipelineConfig) -> np.ndarray:
    """(h, w) integer window -> (9, h, w, n): one D/S conversion per tap generator."""
    return np.stack([generate(values, rng, cfg.n) for rng in cfg.tap_rngs])


def gaussian_blur_sc(streams: np.ndarray, legs: np.ndarray) -> np.ndarray:
    """Mux-based 3x3 blur.

    ``streams`` is (9, h + 2, w + 2, n): the halo'd window D/S-converted once
    per tap generator.  Returns (h, w, n).
    """
    if streams.ndim != 4 or streams.shape[0] != 9:
        raise ValueError("expected (9, h+2, w+2, n) tap streams")
    _, hp, wp, n = streams.shape
    h, w = hp - 2, wp - 2
    if h < 1 or w < 1:
        raise ValueError("missing halo: window must be at least 3x3")
    if len(legs) != n:
        raise ValueError("select length differs from stream length")
    tap_t = LEG_TAP[np.asarray(legs)]
    out = np.empty((h, w, n), dtype=bool)
    for k, (i, j) in enumerate(TAPS):
        ts = np.flatnonzero(tap_t == k)
        if ts.size:
            out[:, :, ts] = streams[k, i:i + h, j:j + w][:, :, ts]
    return out


def roberts_cross_sc(blurred: np.ndarray, cfg: PipelineConfig) -> np.ndarray:
    """(h + 1, w + 1, n) blurred streams -> (h, w, n) edge streams."""
    if blurred.ndim != 3 or blurred.shape[0] < 2 or blurred.shape[1] < 2:
        raise ValueError("malformed neighbourhood: need at least a 2x2 grid of streams")
    if blurred.shape[2] != cfg.n:
        raise ValueError("stream length differs from config")
    if cfg.variant == "regen":
        blurred = regenerate_batch(blurred, cfg.regen)
    n = cfg.n
    a, d = blurred[:-1, :-1], blurred[1:, 1:]
    b, c = blurred[:-1, 1:], blurred[1:, :-1]
    shape = a.shape
    if cfg.variant == "sync":
        # both XOR pairs in one batch, one synchronizer each
        x = np.concatenate([a.reshape(-1, n), b.reshape(-1, n)])
        y = np.concatenate([d.reshape(-1, n), c.reshape(-1, n)])
        xs, ys, _ = Synchronizer(cfg.depth).run_arrays(x, y, cfg.flush)
        half = len(x) // 2
        a, b = xs[:half].reshape(shape), xs[half:].reshape(shape)
        d, c = ys[:half].reshape(shape), ys[half:].reshape(shape)
    return np.where(cfg.ed_select_stream(), a ^ d, b ^ c)


def tiles(height: int, width: int, tile: int):
    """Tile origins and sizes in row-major order."""
    for r0 in range(0, height, tile):
        for c0 in range(0, width, tile):
            yield r0, c0, min(tile, height - r0), min(tile, width - c0)


def process_tile(q: np.ndarray, r0: int, c0: int, th: int, tw: int,
                 cfg: PipelineConfig) -> np.ndarray:
    """Edge-stream ones counts for one tile of the quantized image ``q``."""
    H, W = q.shape
    rows = np.clip(np.arange(r0 - 1, r0 + th + 2), 0, H - 1)
    cols = np.clip(np.arange(c0 - 1, c0 + tw + 2), 0, W - 1)
    halo = q[np.ix_(rows, cols)]
    blurred = gaussian_blur_sc(pixel_streams(halo, cfg), cfg.select_legs())
    # blurred values past the image edge are clamped, not recomputed
    if r0 + th == H:
        blurred[th] = blurred[th - 1]
    if c0 + tw == W:
        blurred[:, tw] = blurred[:, tw - 1]
    edges = roberts_cross_sc(blurred, cfg)
    return np.count_nonzero(edges, axis=-1)


def edge_counts(img: GrayImage, cfg: PipelineConfig, order=None) -> np.ndarray:
    """Ones count of every edge stream; ``order`` permutes the tile schedule."""
    q = quantize(img.pixels, cfg.n)
    counts = np.zeros(q.shape, dtype=np.int64)
    work = list(tiles(*q.shape, cfg.tile))
    if order is not None:
        work = [work[i] for i in order]
    for r0, c0, th, tw in work:
        counts[r0:r0 + th, c0:c0 + tw] = process_tile(q, r0, c0, th, tw, cfg)
    return counts


def reference_pipeline(img: GrayImage) -> np.ndarray:
    """Floating-point blur + Roberts cross on [0, 1] pixels, same border policy."""
    f = img.pixels / 255.0
    H, W = f.shape
    p = np.pad(f, 1, mode="edge")
    g = sum(KERNEL[i, j] * p[i:i + H, j:j + W] for i, j in TAPS) / 16.0
    g = np.pad(g, ((0, 1), (0, 1)), mode="edge")
    return 0.5 * (np.abs(g[:-1, :-1] - g[1:, 1:]) + np.abs(g[:-1, 1:] - g[1:, :-1]))


def psnr(values: np.ndarray, ref: np.ndarray) -> float:
    mse = float(np.mean((values - ref) ** 2))
    return float("inf") if mse == 0 else float(10.0 * np.log10(1.0 / mse))


def run_pipeline(img: GrayImage, cfg: PipelineConfig | None = None):
    """Returns ``(edge image, report)``; errors are measured on [0, 1] values."""
    cfg = cfg or PipelineConfig()
    t0 = time.perf_counter()
    counts = edge_counts(img, cfg)
    values = counts / cfg.n
    ref = reference_pipeline(img)
    out = GrayImage(np.rint(values * 255).astype(np.uint8))
    p = psnr(values, ref)
    report = PipelineReport(
        variant=cfg.variant, n=cfg.n, tile=cfg.tile,
        mae=float(np.abs(values - ref).mean()),
        psnr=None if np.isinf(p) else p,
        seconds=time.perf_counter() - t0,
    )
    return out, report
