"""Composite operators: a correlation manipulator in front of a plain gate."""
from __future__ import annotations

import numpy as np

from .core import Bitstream, unstack
from .correlate import Desynchronizer, Synchronizer

EXACT_OPS = ("max", "min", "satadd", "mult", "scaledadd", "absdiff")


def sync_max(x: Bitstream, y: Bitstream, depth: int = 1) -> Bitstream:
    xs, ys = Synchronizer(depth)(x, y)
    return xs | ys


def sync_min(x: Bitstream, y: Bitstream, depth: int = 1) -> Bitstream:
    xs, ys = Synchronizer(depth)(x, y)
    return xs & ys


def desync_sat_add(x: Bitstream, y: Bitstream, depth: int = 1) -> Bitstream:
    xd, yd = Desynchronizer(depth)(x, y)
    return xd | yd


def exact_oracle(op: str, x: float, y: float) -> float:
    """Real-valued result the SC operator is meant to approximate."""
    if op == "max":
        return max(x, y)
    if op == "min":
        return min(x, y)
    if op == "satadd":
        return min(1.0, x + y)
    if op == "mult":
        return x * y
    if op == "scaledadd":
        return 0.5 * (x + y)
    if op == "absdiff":
        return abs(x - y)
    raise ValueError(f"unknown op {op!r}; expected one of {EXACT_OPS}")


def exact_oracle_batch(op: str, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if op == "max":
        return np.maximum(x, y)
    if op == "min":
        return np.minimum(x, y)
    if op == "satadd":
        return np.minimum(1.0, x + y)
    if op == "mult":
        return x * y
    if op == "scaledadd":
        return 0.5 * (x + y)
    if op == "absdiff":
        return np.abs(x - y)
    raise ValueError(f"unknown op {op!r}; expected one of {EXACT_OPS}")


def _or(x, y, sel, depth):
    return x | y


def _and(x, y, sel, depth):
    return x & y


def _sync_or(x, y, sel, depth):
    xs, ys, _ = Synchronizer(depth).run_arrays(x, y)
    return xs | ys


def _sync_and(x, y, sel, depth):
    xs, ys, _ = Synchronizer(depth).run_arrays(x, y)
    return xs & ys


def _desync_or(x, y, sel, depth):
    xd, yd, _ = Desynchronizer(depth).run_arrays(x, y)
    return xd | yd


def _mux(x, y, sel, depth):
    return np.where(sel, x, y)


def _xor(x, y, sel, depth):
    return x ^ y


# CLI name -> (exact op, circuit on (M, N) arrays)
OPERATORS = {
    "or-max": ("max", _or),
    "sync-max": ("max", _sync_or),
    "and-min": ("min", _and),
    "sync-min": ("min", _sync_and),
    "or-satadd": ("satadd", _or),
    "desync-satadd": ("satadd", _desync_or),
    "mult": ("mult", _and),
    "scaled-add": ("scaledadd", _mux),
    "sub": ("absdiff", _xor),
}


def apply_operator(name: str, x: np.ndarray, y: np.ndarray, sel: np.ndarray | None = None,
                   depth: int = 1) -> np.ndarray:
    """Run a named operator over (M, N) bool arrays."""
    try:
        _, fn = OPERATORS[name]
    except KeyError:
        raise ValueError(f"unknown operator {name!r}; expected one of {sorted(OPERATORS)}") from None
    if name == "scaled-add" and sel is None:
        raise ValueError("scaled-add needs a select stream")
    return fn(x, y, sel, depth)


def apply_operator_streams(name: str, x: Bitstream, y: Bitstream, sel: Bitstream | None = None,
                           depth: int = 1) -> Bitstream:
    out = apply_operator(name, x.bits[None], y.bits[None],
                         None if sel is None else sel.bits[None], depth)
    return unstack(out)[0]
