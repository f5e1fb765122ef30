import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from scsim.pgm import GrayImage, PgmError, encode_pgm, parse_pgm, read_pgm, write_pgm

small_images = st.tuples(st.integers(1, 12), st.integers(1, 12)).flatmap(
    lambda s: arrays(np.uint8, s)).map(GrayImage)


@given(small_images)
def test_binary_roundtrip(img):
    assert parse_pgm(encode_pgm(img)) == img


@given(small_images)
def test_ascii_matches_binary(img):
    body = "\n".join(" ".join(str(v) for v in row) for row in img.pixels.tolist())
    text = f"P2\n# made by hand\n{img.width} {img.height}\n255\n{body}\n"
    assert parse_pgm(text.encode()) == img


def test_file_roundtrip_is_bit_exact(tmp_path):
    img = GrayImage(np.arange(30, dtype=np.uint8).reshape(5, 6) * 8)
    p = tmp_path / "a.pgm"
    write_pgm(p, img)
    data = p.read_bytes()
    assert data.startswith(b"P5\n6 5\n255\n")
    back = read_pgm(p)
    assert back == img
    write_pgm(p, back)
    assert p.read_bytes() == data
    assert [f.name for f in tmp_path.iterdir()] == ["a.pgm"]


def test_comment_between_tokens():
    img = parse_pgm(b"P5 # c\n2 # width done\n1\n255\n\x01\x02")
    assert img.pixels.tolist() == [[1, 2]]


def test_smaller_maxval_rescaled():
    img = parse_pgm(b"P2\n3 1\n15\n0 8 15\n")
    assert img.pixels.tolist() == [[0, 136, 255]]


@pytest.mark.parametrize("data, msg", [
    (b"P6\n1 1\n255\n\x00\x00\x00", "magic"),
    (b"P5\n2 2\n255\n\x00", "expected 4"),
    (b"P5\n2 2\n65535\n", "maxval"),
    (b"P2\n2 1\n10\n3 11\n", "exceeds"),
    (b"P2\n0 1\n255\n", "dimensions"),
    (b"P5\n2", "truncated"),
    (b"P2\nx 1\n255\n1", "non-numeric"),
])
def test_malformed(data, msg):
    with pytest.raises(PgmError, match=msg):
        parse_pgm(data)


def test_missing_file_has_context(tmp_path):
    with pytest.raises(PgmError, match="missing.pgm"):
        read_pgm(tmp_path / "missing.pgm")


def test_gray_image_validation():
    with pytest.raises(ValueError):
        GrayImage(np.zeros((0, 3)))
    with pytest.raises(ValueError):
        GrayImage(np.full((2, 2), 300))
    img = GrayImage(np.full((2, 3), 7))
    assert (img.width, img.height) == (3, 2)
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 1
