"""Combinational SC arithmetic and the isolator.

Each gate's accuracy depends on the correlation of its operands:

============  =========  ===========================
gate          logic      operands should be
============  =========  ===========================
mult          AND        uncorrelated
scaled_add    MUX        uncorrelated with ``sel``
sat_add       OR         negatively correlated
sub           XOR        positively correlated
============  =========  ===========================
"""
from __future__ import annotations

from .core import Bitstream


def mult(x: Bitstream, y: Bitstream) -> Bitstream:
    return x & y


def scaled_add(x: Bitstream, y: Bitstream, sel: Bitstream) -> Bitstream:
    """Multiplexer: take ``x`` where ``sel`` is 1, ``y`` elsewhere."""
    x._check(sel)
    return (sel & x) | (~sel & y)


def sat_add(x: Bitstream, y: Bitstream) -> Bitstream:
    return x | y


def sub_correlated(x: Bitstream, y: Bitstream) -> Bitstream:
    """|p_x - p_y| for maximally positively correlated operands."""
    return x ^ y


def isolator(x: Bitstream, init: int = 0) -> Bitstream:
    """One-cycle delay; the final input bit falls off the end."""
    if init not in (0, 1):
        raise ValueError("init must be 0 or 1")
    bits = x.bits
    out = bits.copy()
    out[0] = bool(init)
    out[1:] = bits[:-1]
    return Bitstream.from_bits(out)
