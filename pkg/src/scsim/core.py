"""Bitstreams, value decoding and correlation metrics.

A :class:`Bitstream` stores its bits packed eight to a byte (``np.packbits``
order, so bit 0 of the stream is the most significant bit of byte 0).  All
metrics are computed from integer position counts and only converted to
floats at the very end.

Batch variants (``*_batch``) take 2-D boolean arrays of shape ``(M, N)``:
one stream per row.  They are what the sweeps use.
"""
from __future__ import annotations

import enum
from typing import Iterable, NamedTuple

import numpy as np


class LengthMismatch(ValueError):
    """Two streams that must be combined positionwise differ in length."""


class Encoding(enum.Enum):
    UNIPOLAR = "unipolar"
    BIPOLAR = "bipolar"


class Bitstream:
    """Immutable, packed, fixed-length bitstream.

    Index 0 is the first clock cycle.
    """

    __slots__ = ("_packed", "_n")

    def __init__(self, packed: np.ndarray, n: int):
        if n < 1:
            raise ValueError("bitstream length must be positive")
        packed = np.ascontiguousarray(packed, dtype=np.uint8)
        if packed.shape != ((n + 7) // 8,):
            raise ValueError(f"packed buffer has {packed.size} bytes, need {(n + 7) // 8}")
        pad = (-n) % 8
        if pad and packed[-1] & ((1 << pad) - 1):
            packed = packed.copy()
            packed[-1] &= (0xFF << pad) & 0xFF
        packed.flags.writeable = False
        self._packed = packed
        self._n = n

    @classmethod
    def from_bits(cls, bits: Iterable[int] | np.ndarray) -> "Bitstream":
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits)
        if arr.ndim != 1:
            raise ValueError("expected a 1-D sequence of bits")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("bits must be 0 or 1")
        return cls(np.packbits(arr.astype(bool)), arr.size)

    @classmethod
    def from_str(cls, text: str) -> "Bitstream":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bitstream literal: {text!r}")
        return cls.from_bits(np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"))

    @classmethod
    def zeros(cls, n: int) -> "Bitstream":
        return cls(np.zeros((n + 7) // 8, dtype=np.uint8), n)

    @classmethod
    def all_ones(cls, n: int) -> "Bitstream":
        return ~cls.zeros(n)

    @property
    def packed(self) -> np.ndarray:
        return self._packed

    @property
    def bits(self) -> np.ndarray:
        """Unpacked copy as a boolean array of length N."""
        return np.unpackbits(self._packed, count=self._n).astype(bool)

    def ones(self) -> int:
        return int(np.bitwise_count(self._packed).sum())

    def is_constant(self) -> bool:
        k = self.ones()
        return k == 0 or k == self._n

    def __len__(self) -> int:
        return self._n

    def __getitem__(self, t: int) -> int:
        if not -self._n <= t < self._n:
            raise IndexError(t)
        t %= self._n
        return int(self._packed[t >> 3] >> (7 - (t & 7)) & 1)

    def __iter__(self):
        return iter(int(b) for b in self.bits)

    def __str__(self) -> str:
        return (self.bits.astype(np.uint8) + ord("0")).tobytes().decode()

    def __repr__(self) -> str:
        s = str(self)
        return f"Bitstream({s if len(s) <= 64 else s[:61] + '...'!r}, n={self._n})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bitstream):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._packed, other._packed)

    def __hash__(self) -> int:
        return hash((self._n, self._packed.tobytes()))

    def _check(self, other: "Bitstream") -> None:
        if self._n != other._n:
            raise LengthMismatch(f"stream lengths differ: {self._n} vs {other._n}")

    def __and__(self, other: "Bitstream") -> "Bitstream":
        self._check(other)
        return Bitstream(self._packed & other._packed, self._n)

    def __or__(self, other: "Bitstream") -> "Bitstream":
        self._check(other)
        return Bitstream(self._packed | other._packed, self._n)

    def __xor__(self, other: "Bitstream") -> "Bitstream":
        self._check(other)
        return Bitstream(self._packed ^ other._packed, self._n)

    def __invert__(self) -> "Bitstream":
        # constructor clears the padding bits
        return Bitstream(~self._packed, self._n)


def as_bitstream(x: Bitstream | str | Iterable[int]) -> Bitstream:
    if isinstance(x, Bitstream):
        return x
    if isinstance(x, str):
        return Bitstream.from_str(x)
    return Bitstream.from_bits(x)


def value(x: Bitstream, enc: Encoding = Encoding.UNIPOLAR) -> float:
    """Decode a stream: ones/N (unipolar) or (2*ones - N)/N (bipolar)."""
    n, k = len(x), x.ones()
    if enc is Encoding.UNIPOLAR:
        return k / n
    return (2 * k - n) / n


class SccCounts(NamedTuple):
    a: int  # X=1, Y=1
    b: int  # X=1, Y=0
    c: int  # X=0, Y=1
    d: int  # X=0, Y=0

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d


def scc_counts(x: Bitstream, y: Bitstream) -> SccCounts:
    x._check(y)
    both = np.bitwise_count(x.packed & y.packed).sum()
    a = int(both)
    b = x.ones() - a
    c = y.ones() - a
    return SccCounts(a, b, c, len(x) - a - b - c)


def scc_from_counts(a: int, b: int, c: int, d: int) -> float:
    """SCC from position counts; 0 when either stream is constant."""
    n = a + b + c + d
    num = a * d - b * c
    if num > 0:
        den = n * min(a + b, a + c) - (a + b) * (a + c)
    else:
        den = (a + b) * (a + c) - n * max(a - d, 0)
    if den == 0:
        return 0.0
    return num / den


def scc(x: Bitstream, y: Bitstream) -> float:
    return scc_from_counts(*scc_counts(x, y))


def bias(out: Bitstream, inp: Bitstream, enc: Encoding = Encoding.UNIPOLAR) -> float:
    out._check(inp)
    if enc is Encoding.UNIPOLAR:
        return (out.ones() - inp.ones()) / len(out)
    return 2 * (out.ones() - inp.ones()) / len(out)


def abs_error(measured: float, exact: float) -> float:
    return abs(measured - exact)


# -- batch variants over (M, N) boolean arrays ------------------------------

def _pair(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=bool)
    y = np.asarray(y, dtype=bool)
    if x.shape != y.shape:
        raise LengthMismatch(f"stream batches differ in shape: {x.shape} vs {y.shape}")
    return x, y


def scc_counts_batch(x: np.ndarray, y: np.ndarray):
    """Per-row (a, b, c, d) as int64 arrays."""
    x, y = _pair(x, y)
    n = x.shape[-1]
    a = np.count_nonzero(x & y, axis=-1).astype(np.int64)
    b = np.count_nonzero(x, axis=-1) - a
    c = np.count_nonzero(y, axis=-1) - a
    return a, b, c, n - a - b - c


def scc_batch(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    a, b, c, d = scc_counts_batch(x, y)
    n = a + b + c + d
    num = a * d - b * c
    den = np.where(
        num > 0,
        n * np.minimum(a + b, a + c) - (a + b) * (a + c),
        (a + b) * (a + c) - n * np.maximum(a - d, 0),
    )
    out = np.zeros(num.shape, dtype=float)
    np.divide(num, den, out=out, where=den != 0)
    return out


def nonconstant(x: np.ndarray) -> np.ndarray:
    """Row mask: True where the stream has both a 0 and a 1."""
    k = np.count_nonzero(x, axis=-1)
    return (k > 0) & (k < np.shape(x)[-1])


def stack(streams: Iterable[Bitstream]) -> np.ndarray:
    """Unpack several equal-length streams into an (M, N) bool array."""
    streams = list(streams)
    if not streams:
        raise ValueError("no streams")
    n = len(streams[0])
    for s in streams[1:]:
        if len(s) != n:
            raise LengthMismatch("streams differ in length")
    return np.stack([s.bits for s in streams])


def unstack(arr: np.ndarray) -> list[Bitstream]:
    arr = np.atleast_2d(np.asarray(arr, dtype=bool))
    n = arr.shape[-1]
    packed = np.packbits(arr, axis=-1)
    return [Bitstream(row, n) for row in packed]
