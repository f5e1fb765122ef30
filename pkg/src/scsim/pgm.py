"""8-bit grayscale images and binary/ASCII PGM I/O."""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class PgmError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GrayImage:
    pixels: np.ndarray  # (height, width) uint8, row-major

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.size == 0:
            raise ValueError("image must be a non-empty 2-D array")
        if px.dtype != np.uint8:
            if px.min() < 0 or px.max() > 255:
                raise ValueError("pixels must lie in [0, 255]")
            px = px.astype(np.uint8)
        px = px.copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)

    __hash__ = None


def _tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    toks: list[bytes] = []
    i = 0
    while len(toks) < count:
        while i < len(data) and data[i:i + 1].isspace():
            i += 1
        if i >= len(data):
            raise PgmError("truncated header")
        if data[i:i + 1] == b"#":
            while i < len(data) and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < len(data) and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
            j += 1
        toks.append(data[i:j])
        i = j
    return toks, i


def parse_pgm(data: bytes) -> GrayImage:
    (magic, w, h, maxval), end = _tokens(data, 4)
    if magic not in (b"P2", b"P5"):
        raise PgmError(f"unsupported magic {magic!r}; expected P2 or P5")
    try:
        w, h, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise PgmError("non-numeric header field") from None
    if w < 1 or h < 1:
        raise PgmError(f"bad dimensions {w}x{h}")
    if not 0 < maxval <= 255:
        raise PgmError(f"maxval {maxval} unsupported; only 8-bit images are handled")
    if magic == b"P5":
        body = data[end + 1:end + 1 + w * h]
        if len(body) != w * h:
            raise PgmError(f"expected {w * h} pixel bytes, found {len(body)}")
        px = np.frombuffer(body, dtype=np.uint8).reshape(h, w)
    else:
        fields = data[end:].split()
        if len(fields) < w * h:
            raise PgmError(f"expected {w * h} pixel values, found {len(fields)}")
        px = np.array([int(v) for v in fields[: w * h]], dtype=np.int64).reshape(h, w)
    if px.max() > maxval:
        raise PgmError("pixel value exceeds maxval")
    if maxval != 255:
        px = (px.astype(np.int64) * 255 * 2 + maxval) // (2 * maxval)
    return GrayImage(px.astype(np.uint8))


def read_pgm(path: str | os.PathLike) -> GrayImage:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise PgmError(f"{path}: {e.strerror or e}") from e
    try:
        return parse_pgm(data)
    except PgmError as e:
        raise PgmError(f"{path}: {e}") from None


def encode_pgm(img: GrayImage) -> bytes:
    return f"P5\n{img.width} {img.height}\n255\n".encode() + img.pixels.tobytes()


def write_pgm(path: str | os.PathLike, img: GrayImage) -> None:
    """Write binary PGM atomically (no partial file on failure)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(encode_pgm(img))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
