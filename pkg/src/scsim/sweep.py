"""Exhaustive value-pair sweeps for correlation circuits and operators.

Every pair ``(x, y)`` in ``[0, N]^2`` is D/S-converted with the given
generators, pushed through a circuit, and measured.  Correlation averages
skip pairs where either input stream is constant, since SCC is undefined
there.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .convert import generate
from .core import nonconstant, scc_batch
from .correlate import PairCircuit
from .ops import OPERATORS, apply_operator, exact_oracle_batch
from .rng import RngConfig


def value_grid(n: int, values=None) -> tuple[np.ndarray, np.ndarray]:
    vals = np.arange(n + 1) if values is None else np.asarray(values, dtype=np.int64)
    xs, ys = np.meshgrid(vals, vals, indexing="ij")
    return xs.ravel(), ys.ravel()


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.6g}"


@dataclass
class SweepReport:
    """Per-pair correlation/bias results plus their means."""

    x: np.ndarray
    y: np.ndarray
    input_scc: np.ndarray
    output_scc: np.ndarray
    bias_x: np.ndarray
    bias_y: np.ndarray
    excluded: int = 0

    @property
    def pairs(self) -> int:
        return len(self.x)

    @property
    def mean_input_scc(self) -> float:
        return float(self.input_scc.mean())

    @property
    def mean_output_scc(self) -> float:
        return float(self.output_scc.mean())

    @property
    def mean_bias_x(self) -> float:
        return float(self.bias_x.mean())

    @property
    def mean_bias_y(self) -> float:
        return float(self.bias_y.mean())

    def summary(self) -> dict:
        return {
            "pairs": self.pairs,
            "excluded": self.excluded,
            "input_scc": self.mean_input_scc,
            "output_scc": self.mean_output_scc,
            "bias_x": self.mean_bias_x,
            "bias_y": self.mean_bias_y,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "input_scc", "output_scc", "bias_x", "bias_y"])
        for row in zip(self.x, self.y, self.input_scc, self.output_scc, self.bias_x, self.bias_y):
            w.writerow([fmt(v) for v in row])
        w.writerow(["mean", "", fmt(self.mean_input_scc), fmt(self.mean_output_scc),
                    fmt(self.mean_bias_x), fmt(self.mean_bias_y)])
        return buf.getvalue()


def correlation_sweep(circuit: PairCircuit, rng_x: RngConfig, rng_y: RngConfig, n: int = 256,
                      values=None, flush: bool = False) -> SweepReport:
    xs, ys = value_grid(n, values)
    X = generate(xs, rng_x, n)
    Y = generate(ys, rng_y, n)
    keep = nonconstant(X) & nonconstant(Y)
    X, Y, xs, ys = X[keep], Y[keep], xs[keep], ys[keep]
    Xo, Yo, _ = circuit.run_arrays(X, Y, flush)
    ones = lambda a: np.count_nonzero(a, axis=-1)  # noqa: E731
    return SweepReport(
        x=xs,
        y=ys,
        input_scc=scc_batch(X, Y),
        output_scc=scc_batch(Xo, Yo),
        bias_x=(ones(Xo) - ones(X)) / n,
        bias_y=(ones(Yo) - ones(Y)) / n,
        excluded=int((~keep).sum()),
    )


@dataclass
class OpsReport:
    op: str
    x: np.ndarray
    y: np.ndarray
    value_x: np.ndarray
    value_y: np.ndarray
    exact: np.ndarray
    output: np.ndarray

    @property
    def error(self) -> np.ndarray:
        """Signed error, value(out) - exact."""
        return self.output - self.exact

    @property
    def mean_abs_error(self) -> float:
        return float(np.abs(self.error).mean())

    @property
    def mean_bias(self) -> float:
        return float(self.error.mean())

    def summary(self) -> dict:
        return {"op": self.op, "pairs": len(self.x),
                "mean_abs_error": self.mean_abs_error, "mean_bias": self.mean_bias}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "value_x", "value_y", "exact", "output", "error"])
        for row in zip(self.x, self.y, self.value_x, self.value_y, self.exact, self.output,
                       self.error):
            w.writerow([fmt(v) for v in row])
        w.writerow(["mean", "", "", "", "", "", fmt(self.mean_bias)])
        w.writerow(["mean_abs", "", "", "", "", "", fmt(self.mean_abs_error)])
        return buf.getvalue()


DEFAULT_SEL = RngConfig("lfsr", width=8, seed=1)


def ops_sweep(op: str, rng_x: RngConfig, rng_y: RngConfig, n: int = 256, depth: int = 1,
              rng_sel: RngConfig | None = None, values=None) -> OpsReport:
    """Error of a named operator against its exact real-valued result.

    The reference uses the values actually encoded by the generated input
    streams, so generator quantization is not counted as operator error.
    """
    if op not in OPERATORS:
        raise ValueError(f"unknown operator {op!r}; expected one of {sorted(OPERATORS)}")
    exact_name, _ = OPERATORS[op]
    xs, ys = value_grid(n, values)
    X = generate(xs, rng_x, n)
    Y = generate(ys, rng_y, n)
    sel = None
    if op == "scaled-add":
        sel = generate([n // 2], rng_sel or DEFAULT_SEL, n)
    out = apply_operator(op, X, Y, sel, depth)
    vx = np.count_nonzero(X, axis=-1) / n
    vy = np.count_nonzero(Y, axis=-1) / n
    return OpsReport(op, xs, ys, vx, vy, exact_oracle_batch(exact_name, vx, vy),
                     np.count_nonzero(out, axis=-1) / n)
