"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest (lines are collected into the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""
import functools
import sys
import time
from pathlib import Path

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402
from scsim.convert import d_to_s, generate  # noqa: E402
from scsim.core import Bitstream, Encoding, scc, scc_counts, value  # noqa: E402
from scsim.correlate import (  # noqa: E402
    Decorrelator,
    Desynchronizer,
    DesyncState,
    IsolatorPair,
    Synchronizer,
    SyncState,
    desynchronizer_step,
    shuffle_batch,
    synchronizer_step,
)
from scsim.pgm import GrayImage  # noqa: E402
from scsim.pipeline import PipelineConfig, edge_counts, run_pipeline  # noqa: E402
from scsim.rng import RngConfig  # noqa: E402
from scsim.sweep import correlation_sweep, ops_sweep  # noqa: E402
from strategies import bits_of_length  # noqa: E402

N = 256
VDC = RngConfig("vdc", width=8)
H3 = RngConfig("halton", base=3)
CASES = 10_000
PROPS = settings(max_examples=CASES, derandomize=True, database=None, deadline=None)


def record(k, name, checks, elapsed, limit):
    """Print and collect one line; return whether every check held."""
    ok = all(c for _, c in checks) and (limit is None or elapsed < limit)
    parts = [f"{text}:{'ok' if c else 'NO'}" for text, c in checks]
    parts.append(f"time={elapsed:.3g}s" + ("" if limit is None else f"<{limit:g}s"))
    line = f"{'PASS' if ok else 'FAIL'} C{k} {name}: " + "; ".join(parts)
    conftest.ACCEPTANCE.append(line)
    print(line)
    return ok


def test_c1_scc_truth_table():
    rows = [("10101010", "10111011", 1.0), ("10101010", "11011101", -1.0),
            ("10101010", "11111100", 0.0)]
    pairs = [(Bitstream.from_str(x), Bitstream.from_str(y), want) for x, y, want in rows]
    scc(pairs[0][0], pairs[0][1])  # warm-up
    t0 = time.perf_counter()
    got = [scc(x, y) for x, y, _ in pairs]
    elapsed = time.perf_counter() - t0
    checks = [(f"scc={want:+g} got {g:+g}", g == want) for (_, _, want), g in zip(pairs, got)]
    assert record(1, "SCC of reference pairs", checks, elapsed, 1e-3)


def test_c2_and_identities():
    t0 = time.perf_counter()
    rng = RngConfig("vdc", width=4)
    vals = np.arange(17)
    xs, ys = (a.ravel() for a in np.meshgrid(vals, vals, indexing="ij"))
    X = generate(xs, rng, 16)
    Y = generate(ys, rng, 16)
    Yc = generate(ys, rng, 16, complement=True)
    pos = np.count_nonzero(X & Y, axis=1)
    neg = np.count_nonzero(X & Yc, axis=1)
    # brute-force per-pair oracle on the encoded counts
    ok_min = all(p == min(x, y) for p, x, y in zip(pos.tolist(), xs.tolist(), ys.tolist()))
    ok_max = all(q == max(0, x + y - 16) for q, x, y in zip(neg.tolist(), xs.tolist(),
                                                          ys.tolist()))
    elapsed = time.perf_counter() - t0
    checks = [("shared-rng AND == min on 289 pairs", ok_min),
              ("complement-rng AND == max(0,x+y-1) on 289 pairs", ok_max)]
    assert record(2, "AND identities N=16", checks, elapsed, 1.0)


def test_c3_synchronizer_row():
    t0 = time.perf_counter()
    r = correlation_sweep(Synchronizer(1), VDC, H3, N)
    elapsed = time.perf_counter() - t0
    checks = [
        (f"pairs={r.pairs}", r.pairs == 64770),
        (f"input scc {r.mean_input_scc:+.4f} in -0.048+-0.03", abs(r.mean_input_scc + 0.048) <= 0.03),
        (f"output scc {r.mean_output_scc:.4f} >= 0.98", r.mean_output_scc >= 0.98),
        (f"|bias x| {abs(r.mean_bias_x):.5f} <= 0.005", abs(r.mean_bias_x) <= 0.005),
        (f"|bias y| {abs(r.mean_bias_y):.5f} <= 0.005", abs(r.mean_bias_y) <= 0.005),
    ]
    assert record(3, "synchronizer VDC x Halton-3", checks, elapsed, 60)


def test_c4_desynchronizer_row():
    t0 = time.perf_counter()
    r = correlation_sweep(Desynchronizer(1), H3, H3, N)
    elapsed = time.perf_counter() - t0
    checks = [
        (f"output scc {r.mean_output_scc:+.4f} <= -0.88", r.mean_output_scc <= -0.88),
        (f"bias y {r.mean_bias_y:g} == 0", bool(np.all(r.bias_y == 0))),
        (f"|bias x| {abs(r.mean_bias_x):.5f} <= 0.005", abs(r.mean_bias_x) <= 0.005),
    ]
    assert record(4, "desynchronizer Halton-3 x Halton-3", checks, elapsed, 60)


def test_c5_decorrelator_row():
    t0 = time.perf_counter()
    r = correlation_sweep(Decorrelator(4), H3, H3, N)
    iso = correlation_sweep(IsolatorPair(), H3, H3, N)
    elapsed = time.perf_counter() - t0
    checks = [
        (f"input scc {r.mean_input_scc:.4f} >= 0.97", r.mean_input_scc >= 0.97),
        (f"|output scc| {abs(r.mean_output_scc):.4f} <= 0.15", abs(r.mean_output_scc) <= 0.15),
        (f"isolator |scc| {abs(iso.mean_output_scc):.4f} >= 0.3", abs(iso.mean_output_scc) >= 0.3),
    ]
    assert record(5, "decorrelator D=4 same-base Halton", checks, elapsed, 60)


def test_c6_operator_accuracy():
    t0 = time.perf_counter()
    err = {op: ops_sweep(op, VDC, H3, N).mean_abs_error
           for op in ("or-max", "sync-max", "and-min", "sync-min")}
    elapsed = time.perf_counter() - t0
    checks = [
        (f"or-max {err['or-max']:.4f} in 0.087+-0.010", abs(err["or-max"] - 0.087) <= 0.010),
        (f"sync-max {err['sync-max']:.4f} <= 0.010", err["sync-max"] <= 0.010),
        (f"and-min {err['and-min']:.4f} in 0.082+-0.010", abs(err["and-min"] - 0.082) <= 0.010),
        (f"sync-min {err['sync-min']:.4f} <= 0.010", err["sync-min"] <= 0.010),
    ]
    assert record(6, "max/min accuracy", checks, elapsed, 120)


def test_c7_pipeline(brick):
    t0 = time.perf_counter()
    mae = {v: run_pipeline(brick, PipelineConfig(n=N, tile=10, variant=v))[1].mae
           for v in ("none", "regen", "sync")}
    elapsed = time.perf_counter() - t0
    checks = [
        (f"none {mae['none']:.4f} >= 0.06", mae["none"] >= 0.06),
        (f"regen {mae['regen']:.4f} <= 0.03", mae["regen"] <= 0.03),
        (f"sync {mae['sync']:.4f} <= 0.03", mae["sync"] <= 0.03),
        (f"|sync-regen| {abs(mae['sync'] - mae['regen']):.4f} <= 0.005",
         abs(mae["sync"] - mae["regen"]) <= 0.005),
    ]
    assert record(7, "blur + edge pipeline 64x64", checks, elapsed, 300)


# -- criterion 8: property suites ------------------------------------------

CALLS: dict[str, int] = {}


def counted(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        CALLS[fn.__name__] = CALLS.get(fn.__name__, 0) + 1
        return fn(*args, **kw)
    return wrapper


def run_property(name, test):
    CALLS.pop(test.__name__, None)
    t0 = time.perf_counter()
    test()
    elapsed = time.perf_counter() - t0
    calls = CALLS.get(test.__name__, 0)
    assert record(8, name, [(f"cases={calls} >= {CASES}", calls >= CASES)], elapsed, None)


def ones(bits):
    return sum(bits)


pair_lengths = st.integers(2, 96)


@st.composite
def fsm_case(draw):
    n = draw(pair_lengths)
    depth = draw(st.integers(1, 4))
    x = draw(bits_of_length(n))
    y = draw(bits_of_length(n))
    return n, depth, x, y


@PROPS
@given(fsm_case(), st.integers(-4, 4),
       st.sampled_from([RngConfig("halton", base=b) for b in (2, 3, 5, 7, 11)]
                       + [RngConfig("vdc", width=w) for w in (3, 4, 5)]))
@counted
def _ledgers(case, init, aux):
    n, depth, x, y = case
    init = max(-depth, min(depth, init))
    # flushed synchronizer: every bit leaving the ledger is a saved one
    state = SyncState(depth, init, flush=True, n=n)
    out = [synchronizer_step(state, p, q) for p, q in zip(x, y)]
    sx0, sy0 = max(init, 0), max(-init, 0)
    sx1, sy1 = max(state.s, 0), max(-state.s, 0)
    assert ones(o[0] for o in out) == ones(x) + sx0 - sx1
    assert ones(o[1] for o in out) == ones(y) + sy0 - sy1
    # shuffle buffer: stream ones plus memory ones are conserved
    xo, mem = shuffle_batch(np.array(x, bool), depth, aux)
    assert xo.sum() + mem.sum() == ones(x) + (depth + 1) // 2


def test_c8_ledgers():
    run_property("ledgers (flushed synchronizer, shuffle buffer)", _ledgers)


@PROPS
@given(fsm_case(), st.booleans(), st.integers(0, 4))
@counted
def _desync_passthrough(case, flush, k0):
    n, depth, x, y = case
    state = DesyncState(depth, min(k0, depth), flush=flush, n=n)
    out = [desynchronizer_step(state, p, q) for p, q in zip(x, y)]
    assert [o[1] for o in out] == list(y)


def test_c8_desync_passthrough():
    run_property("desynchronizer Y passthrough", _desync_passthrough)


@PROPS
@given(pair_lengths.flatmap(lambda n: st.tuples(bits_of_length(n), bits_of_length(n))))
@counted
def _scc_range_symmetry(pair):
    x, y = (Bitstream.from_bits(b) for b in pair)
    v = scc(x, y)
    assert -1.0 <= v <= 1.0
    assert v == scc(y, x)
    c, r = scc_counts(x, y), scc_counts(y, x)
    assert (c.a, c.d, c.b, c.c) == (r.a, r.d, r.c, r.b)


def test_c8_scc_range_symmetry():
    run_property("SCC range and symmetry", _scc_range_symmetry)


@PROPS
@given(st.integers(1, 10).flatmap(lambda w: st.tuples(
    st.just(w), st.integers(0, 1 << w), st.integers(0, 4 * (1 << w)))))
@counted
def _vdc_exact(case):
    w, x, start = case
    s = d_to_s(x, RngConfig("vdc", width=w, start=start), 1 << w)
    assert s.ones() == x


def test_c8_vdc_exact_ones():
    run_property("VDC D/S exact ones count", _vdc_exact)


@PROPS
@given(st.integers(1, 300).flatmap(bits_of_length))
@counted
def _bipolar(bits):
    s = Bitstream.from_bits(bits)
    assert abs(value(s, Encoding.BIPOLAR) - (2 * value(s) - 1)) <= 2 ** -50


def test_c8_bipolar_unipolar():
    run_property("bipolar/unipolar relation", _bipolar)


@PROPS
@given(arrays(np.uint8, st.tuples(st.integers(1, 4), st.integers(1, 4))),
       st.sampled_from(["none", "regen", "sync"]), st.sampled_from([8, 16]),
       st.integers(2, 5))
@counted
def _pipeline_determinism(pixels, variant, n, tile):
    img = GrayImage(pixels)
    cfg = PipelineConfig(n=n, tile=tile, variant=variant)
    a = edge_counts(img, cfg)
    b = edge_counts(GrayImage(pixels.copy()), cfg)
    assert np.array_equal(a, b)


def test_c8_pipeline_determinism():
    run_property("pipeline determinism", _pipeline_determinism)


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
