"""Deterministic integer generators for stochastic-number generation.

Three kinds are supported:

* ``lfsr``   Fibonacci linear feedback shift register of width ``w``.
  Emits its raw state, which lives in ``[1, 2**w - 1]``.
* ``vdc``    Van der Corput: the ``w``-bit reversal of the cycle index.
* ``halton`` radical inverse of the cycle index in an arbitrary base.

Every generator produces a fraction in ``[0, 1)`` per cycle; a stream of
range ``n`` emits ``floor(n * fraction)`` computed in exact integer
arithmetic.  For ``lfsr`` and ``vdc`` with ``n == 2**w`` this is the raw
integer itself.

Low-discrepancy streams start at index ``t = 1`` by default, i.e. the
all-zero first element is skipped.  ``start=0`` restores plain counting
from zero.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

# Maximal-length Fibonacci taps, as exponents of the feedback polynomial.
MAXIMAL_TAPS: dict[int, tuple[int, ...]] = {
    2: (2, 1),
    3: (3, 2),
    4: (4, 3),
    5: (5, 3),
    6: (6, 5),
    7: (7, 6),
    8: (8, 6, 5, 4),
    9: (9, 5),
    10: (10, 7),
    11: (11, 9),
    12: (12, 6, 4, 1),
    13: (13, 4, 3, 1),
    14: (14, 5, 3, 1),
    15: (15, 14),
    16: (16, 15, 13, 4),
}

KINDS = ("lfsr", "vdc", "halton")


class RngError(ValueError):
    pass


def lfsr_next(state: int, taps: tuple[int, ...], width: int) -> tuple[int, int]:
    """One shift of a Fibonacci LFSR.

    Returns ``(next_state, r)`` where ``r`` is the state *before* the shift.
    """
    if state == 0:
        raise RngError("LFSR state 0 is the lockup state")
    fb = 0
    for tap in taps:
        fb ^= (state >> (tap - 1)) & 1
    nxt = ((state << 1) | fb) & ((1 << width) - 1)
    return nxt, state


def vdc_next(t: int, width: int) -> int:
    """Bit reversal of ``t mod 2**width`` within ``width`` bits."""
    t &= (1 << width) - 1
    r = 0
    for _ in range(width):
        r = (r << 1) | (t & 1)
        t >>= 1
    return r


def radical_inverse(t: int, base: int) -> tuple[int, int]:
    """Radical inverse of ``t`` as an exact fraction ``(num, den)``."""
    num, den = 0, 1
    while t:
        t, digit = divmod(t, base)
        num = num * base + digit
        den *= base
    return num, den


def halton_next(t: int, base: int, n: int) -> int:
    num, den = radical_inverse(t, base)
    return (n * num) // den


@dataclass(frozen=True)
class RngConfig:
    kind: str
    width: int | None = None
    base: int | None = None
    seed: int = 1
    start: int | None = None
    taps: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RngError(f"unknown generator kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("lfsr", "vdc"):
            if self.width is None or self.width < 1:
                raise RngError(f"{self.kind} needs a width w >= 1")
        if self.kind == "lfsr":
            if self.width < 2:
                raise RngError("lfsr width must be at least 2")
            if not 0 < self.seed < (1 << self.width):
                raise RngError(f"lfsr seed must be in [1, {(1 << self.width) - 1}]")
            if self.taps is None and self.width not in MAXIMAL_TAPS:
                raise RngError(f"no default taps for width {self.width}; pass taps explicitly")
            taps = self.lfsr_taps
            if not taps or max(taps) != self.width or min(taps) < 1:
                raise RngError(f"bad taps {taps} for width {self.width}")
        if self.kind == "halton":
            if self.base is None or self.base < 2:
                raise RngError("halton needs base >= 2")
        if self.start is not None and self.start < 0:
            raise RngError("start index must be non-negative")

    @property
    def lfsr_taps(self) -> tuple[int, ...]:
        return self.taps if self.taps is not None else MAXIMAL_TAPS[self.width]

    @property
    def first_index(self) -> int:
        if self.start is not None:
            return self.start
        return 0 if self.kind == "lfsr" else 1

    @property
    def native_range(self) -> int | None:
        """Range of the raw generator, or None if any range is allowed."""
        return None if self.kind == "halton" else 1 << self.width

    def stream(self, n: int) -> "RngStream":
        return RngStream(self, n)

    def sequence(self, length: int, n: int) -> np.ndarray:
        """The first ``length`` values of a range-``n`` stream (read-only, cached)."""
        return _cached_sequence(self, length, n)

    def __str__(self) -> str:
        if self.kind == "lfsr":
            parts = [f"w={self.width}", f"seed={self.seed}"]
            if self.taps is not None:
                parts.append("taps=" + "-".join(map(str, self.taps)))
        elif self.kind == "vdc":
            parts = [f"w={self.width}"]
        else:
            parts = [f"base={self.base}"]
        if self.start is not None:
            parts.append(f"start={self.start}")
        return f"{self.kind}:" + ",".join(parts)


class RngStream:
    """Single-owner iterator over integers in ``[0, n)``."""

    def __init__(self, config: RngConfig, n: int):
        if n < 2:
            raise RngError("stream range must be at least 2")
        self.config = config
        self.n = n
        self.reset()

    def reset(self) -> None:
        cfg = self.config
        self.t = cfg.first_index
        if cfg.kind == "lfsr":
            self._state = cfg.seed
            for _ in range(self.t):
                self._state, _ = lfsr_next(self._state, cfg.lfsr_taps, cfg.width)

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        cfg = self.config
        if cfg.kind == "lfsr":
            self._state, raw = lfsr_next(self._state, cfg.lfsr_taps, cfg.width)
            r = (raw * self.n) >> cfg.width
        elif cfg.kind == "vdc":
            r = (vdc_next(self.t, cfg.width) * self.n) >> cfg.width
        else:
            r = halton_next(self.t, cfg.base, self.n)
        self.t += 1
        return r

    def take(self, length: int) -> np.ndarray:
        return np.fromiter((next(self) for _ in range(length)), dtype=np.int64, count=length)


_ITEM = re.compile(r"^\s*(\w+)\s*=\s*([\w-]+)\s*$")


def parse_rng(text: str) -> RngConfig:
    """Parse ``kind:key=val,...``, e.g. ``lfsr:w=8,seed=1`` or ``halton:base=3``."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind not in KINDS:
        raise RngError(f"unknown generator kind in {text!r}")
    kwargs: dict = {}
    names = {"w": "width", "width": "width", "base": "base", "seed": "seed",
             "start": "start", "taps": "taps"}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        m = _ITEM.match(item)
        if not m or m.group(1) not in names:
            raise RngError(f"bad generator option {item!r} in {text!r}")
        key, raw = names[m.group(1)], m.group(2)
        try:
            if key == "taps":
                kwargs[key] = tuple(int(v) for v in raw.split("-"))
            else:
                kwargs[key] = int(raw, 0)
        except ValueError:
            raise RngError(f"bad value {raw!r} for {m.group(1)} in {text!r}") from None
    return RngConfig(kind, **kwargs)


@lru_cache(maxsize=256)
def _cached_sequence(config: RngConfig, length: int, n: int) -> np.ndarray:
    seq = RngStream(config, n).take(length)
    seq.flags.writeable = False
    return seq
