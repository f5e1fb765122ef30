"""Digital/stochastic conversion and regeneration."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import Bitstream, LengthMismatch, unstack
from .rng import RngConfig, RngStream


class RangeError(ValueError):
    pass


def default_regen_config(n: int) -> RngConfig:
    """VDC when ``n`` is a power of two (exact quantization), else base-2 Halton."""
    if n & (n - 1) == 0:
        return RngConfig("vdc", width=n.bit_length() - 1)
    return RngConfig("halton", base=2)


def _rng_values(rng: RngStream | RngConfig, n: int) -> np.ndarray:
    if isinstance(rng, RngConfig):
        return rng.sequence(n, n)
    if rng.n != n:
        raise RangeError(f"generator range {rng.n} does not match stream length {n}")
    return rng.take(n)


def d_to_s(x: int, rng: RngStream | RngConfig, n: int) -> Bitstream:
    """Comparator D/S converter: bit t is 1 iff r_t < x.

    A :class:`RngStream` is advanced by ``n`` values; a :class:`RngConfig`
    is run from its start.
    """
    if not 0 <= x <= n:
        raise RangeError(f"value {x} outside [0, {n}]")
    return Bitstream.from_bits(_rng_values(rng, n) < x)


def generate(values: Sequence[int] | np.ndarray, rng: RngConfig, n: int,
             complement: bool = False) -> np.ndarray:
    """D/S-convert many integers with the same generator sequence -> (M, n) bools.

    ``complement`` compares against ``n - 1 - r`` instead of ``r``; a stream
    made this way has SCC -1 with one made from the plain sequence.
    """
    values = np.asarray(values, dtype=np.int64)
    if values.size and (values.min() < 0 or values.max() > n):
        raise RangeError(f"values must lie in [0, {n}]")
    r = rng.sequence(n, n)
    if complement:
        r = n - 1 - r
    return r < values[..., None]


def s_to_d(x: Bitstream) -> int:
    """Counter S/D converter."""
    return x.ones()


def regenerate(
    streams: Sequence[Bitstream],
    rng_new: RngConfig | Sequence[RngConfig] | None = None,
    shared: bool = True,
) -> list[Bitstream]:
    """Count each stream and re-encode it.

    With ``shared`` every stream is re-thresholded against one generator
    sequence, which nests their supports (pairwise SCC = +1).  Otherwise
    ``rng_new`` must hold one config per stream.
    """
    streams = list(streams)
    if not streams:
        return []
    n = len(streams[0])
    if any(len(s) != n for s in streams):
        raise LengthMismatch("streams differ in length")
    counts = [s_to_d(s) for s in streams]
    if shared:
        if rng_new is None:
            rng_new = default_regen_config(n)
        if not isinstance(rng_new, RngConfig):
            raise TypeError("shared regeneration takes a single RngConfig")
        return unstack(generate(counts, rng_new, n))
    if isinstance(rng_new, RngConfig) or rng_new is None or len(rng_new) != len(streams):
        raise ValueError("independent regeneration needs one RngConfig per stream")
    return [d_to_s(k, cfg, n) for k, cfg in zip(counts, rng_new)]


def regenerate_batch(x: np.ndarray, rng: RngConfig | None = None) -> np.ndarray:
    """Shared-generator regeneration of an (..., N) bool array."""
    x = np.asarray(x, dtype=bool)
    n = x.shape[-1]
    rng = rng or default_regen_config(n)
    return generate(np.count_nonzero(x, axis=-1), rng, n)
