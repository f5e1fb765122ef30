"""Stateful correlation-manipulating circuits.

Two layers live here.  The ``*_step`` functions advance a single circuit by
one clock cycle and are the reference semantics.  The circuit classes
(:class:`Synchronizer`, :class:`Desynchronizer`, :class:`Series`,
:class:`Decorrelator`, :class:`IsolatorPair`) run whole batches of stream
pairs at once, one independent circuit instance per row, vectorized across
rows and stepped along time.

Synchronizer state is a signed counter ``s`` in ``[-D, D]``: ``s > 0``
means ``s`` unpaired X ones are saved, ``s < 0`` means ``|s|`` unpaired Y
ones.  The desynchronizer holds ``k`` in ``[0, D]`` saved X ones.

With flush enabled, once the number of saved bits reaches the number of
remaining cycles the circuit emits a saved bit on every remaining cycle
whose output slot is free, and it never saves a bit that could not be
emitted before the end.  Every circuit obeys the ledger

    ones(X') = ones(X) + saved_x(initial) - saved_x(final)

and likewise for Y; a bit can only end up lost if it is still saved when
the stream ends.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import Bitstream, LengthMismatch, unstack
from .rng import RngConfig, RngStream

# -- single-step reference FSMs ---------------------------------------------


@dataclass
class SyncState:
    depth: int = 1
    s: int = 0
    flush: bool = False
    n: int | None = None
    t: int = 0

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("save depth must be >= 1")
        if abs(self.s) > self.depth:
            raise ValueError(f"initial offset {self.s} exceeds depth {self.depth}")
        if self.flush and self.n is None:
            raise ValueError("flush needs the stream length n")

    def flushing(self) -> bool:
        return self.flush and self.s != 0 and abs(self.s) >= self.n - self.t

    def capacity(self) -> int:
        """How many bits may be held after this cycle."""
        return min(self.depth, self.n - self.t - 1) if self.flush else self.depth


@dataclass
class DesyncState:
    depth: int = 1
    k: int = 0
    flush: bool = False
    n: int | None = None
    t: int = 0

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("save depth must be >= 1")
        if not 0 <= self.k <= self.depth:
            raise ValueError(f"saved count {self.k} outside [0, {self.depth}]")
        if self.flush and self.n is None:
            raise ValueError("flush needs the stream length n")

    def flushing(self) -> bool:
        return self.flush and self.k > 0 and self.k >= self.n - self.t

    def capacity(self) -> int:
        return min(self.depth, self.n - self.t - 1) if self.flush else self.depth


def synchronizer_step(state: SyncState, x: int, y: int) -> tuple[int, int]:
    """Pair up ones across X and Y; saves an unpaired one while there is room."""
    s, d = state.s, state.capacity()
    if state.flushing():
        if s > 0:
            out = (1, y)
            state.s -= 1 - x
        else:
            out = (x, 1)
            state.s += 1 - y
    elif x == y:
        out = (x, y)
    elif x:  # (1, 0)
        if s < 0:
            out, state.s = (1, 1), s + 1
        elif s < d:
            out, state.s = (0, 0), s + 1
        else:
            out = (1, 0)
    else:  # (0, 1)
        if s > 0:
            out, state.s = (1, 1), s - 1
        elif s > -d:
            out, state.s = (0, 0), s - 1
        else:
            out = (0, 1)
    state.t += 1
    return out


def desynchronizer_step(state: DesyncState, x: int, y: int) -> tuple[int, int]:
    """Unpair ones: hold back X's one on (1,1), release it on (0,0). Y passes."""
    k = state.k
    if state.flushing():
        out = (1, y)
        state.k -= 1 - x
    elif x and y:
        if k < state.capacity():
            out, state.k = (0, 1), k + 1
        else:
            out = (1, 1)
    elif not x and not y and k > 0:
        out, state.k = (1, 0), k - 1
    else:
        out = (x, y)
    state.t += 1
    return out


@dataclass
class ShuffleBuffer:
    """Randomly addressed bit memory; ``rng`` must have range ``depth + 1``."""

    depth: int
    rng: RngStream
    memory: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("buffer depth must be >= 1")
        if self.rng.n != self.depth + 1:
            raise ValueError(f"auxiliary generator range must be {self.depth + 1}")
        if not self.memory:
            self.memory = initial_buffer(self.depth).tolist()
        if len(self.memory) != self.depth:
            raise ValueError("memory size must equal depth")


def initial_buffer(depth: int) -> np.ndarray:
    """Slots ``0 .. ceil(D/2)-1`` hold 1, the rest 0."""
    mem = np.zeros(depth, dtype=bool)
    mem[: (depth + 1) // 2] = True
    return mem


def shuffle_step(buf: ShuffleBuffer, x: int) -> int:
    r = next(buf.rng)
    if r == buf.depth:
        return x
    out, buf.memory[r] = buf.memory[r], x
    return out


# -- batched circuits --------------------------------------------------------


def _as_pair(x, y) -> tuple[np.ndarray, np.ndarray, bool]:
    single = isinstance(x, Bitstream)
    if single != isinstance(y, Bitstream):
        raise TypeError("pass two Bitstreams or two arrays")
    if single:
        if len(x) != len(y):
            raise LengthMismatch("streams differ in length")
        return x.bits[None, :], y.bits[None, :], True
    x = np.atleast_2d(np.asarray(x, dtype=bool))
    y = np.atleast_2d(np.asarray(y, dtype=bool))
    if x.shape != y.shape:
        raise LengthMismatch(f"batches differ in shape: {x.shape} vs {y.shape}")
    return x, y, False


class PairCircuit:
    """A circuit transforming a pair of streams into a pair of streams."""

    def run_arrays(self, x: np.ndarray, y: np.ndarray, flush: bool = False):
        """Run on (M, N) bool arrays; returns ``(x', y', final_state)``."""
        raise NotImplementedError

    def __call__(self, x, y, flush: bool = False):
        xa, ya, single = _as_pair(x, y)
        xo, yo, _ = self.run_arrays(xa, ya, flush)
        if single:
            return unstack(xo)[0], unstack(yo)[0]
        return xo, yo


@dataclass(frozen=True)
class Synchronizer(PairCircuit):
    depth: int = 1
    initial: int = 0

    def __post_init__(self):
        SyncState(self.depth, self.initial)  # validates

    def run_arrays(self, x, y, flush=False):
        xt = np.ascontiguousarray(x.T)
        yt = np.ascontiguousarray(y.T)
        n, m = xt.shape
        d = self.depth
        s = np.full(m, self.initial, dtype=np.int64)
        xo = xt.copy()
        yo = yt.copy()
        for t in range(n):
            xb, yb = xt[t], yt[t]
            if flush:
                f = (s != 0) & (np.abs(s) >= n - t)
                cap = min(d, n - t - 1)
            else:
                f = np.zeros(m, dtype=bool)
                cap = d
            m10 = xb & ~yb & ~f
            m01 = ~xb & yb & ~f
            pair10 = m10 & (s < 0)
            save10 = m10 & (s >= 0) & (s < cap)
            pair01 = m01 & (s > 0)
            save01 = m01 & (s <= 0) & (s > -cap)
            paired = pair10 | pair01
            saved = save10 | save01
            xr, yr = xo[t], yo[t]
            xr[paired] = True
            yr[paired] = True
            xr[saved] = False
            yr[saved] = False
            s += (pair10 | save10).astype(np.int64) - (pair01 | save01)
            if flush:
                fx = f & (s > 0)
                fy = f & (s < 0)
                xr[fx] = True
                yr[fy] = True
                s -= fx & ~xb
                s += fy & ~yb
        return xo.T, yo.T, s


@dataclass(frozen=True)
class Desynchronizer(PairCircuit):
    depth: int = 1
    initial: int = 0

    def __post_init__(self):
        DesyncState(self.depth, self.initial)

    def run_arrays(self, x, y, flush=False):
        xt = np.ascontiguousarray(x.T)
        n, m = xt.shape
        k = np.full(m, self.initial, dtype=np.int64)
        xo = xt.copy()
        yt = y.T
        for t in range(n):
            xb, yb = xt[t], yt[t]
            xr = xo[t]
            if flush:
                f = (k > 0) & (k >= n - t)
                xr[f] = True
                k -= f & ~xb
                cap = min(self.depth, n - t - 1)
            else:
                f = np.zeros(m, dtype=bool)
                cap = self.depth
            save = xb & yb & (k < cap) & ~f
            release = ~xb & ~yb & (k > 0) & ~f
            xr[save] = False
            xr[release] = True
            k += save.astype(np.int64) - release
        return xo.T, np.array(y, copy=True), k


@dataclass(frozen=True)
class Series(PairCircuit):
    stages: tuple[PairCircuit, ...]

    def run_arrays(self, x, y, flush=False):
        states = []
        for stage in self.stages:
            x, y, st = stage.run_arrays(x, y, flush)
            states.append(st)
        return x, y, states


def compose_series(stages: Sequence[PairCircuit]) -> PairCircuit:
    stages = tuple(stages)
    if not stages:
        raise ValueError("a series needs at least one stage")
    if len(stages) == 1:
        return stages[0]
    return Series(stages)


def synchronizer_chain(stages: int, depth: int = 1, alternate: bool = False) -> PairCircuit:
    """``stages`` synchronizers in series.

    With ``alternate`` the second stage starts holding a saved X one, the
    third a saved Y one, and so on, which offsets the ones left stuck in
    earlier stages.
    """
    offsets = [0] + [(1 if i % 2 else -1) if alternate else 0 for i in range(1, stages)]
    return compose_series([Synchronizer(depth, o) for o in offsets])


def desynchronizer_chain(stages: int, depth: int = 1) -> PairCircuit:
    return compose_series([Desynchronizer(depth) for _ in range(stages)])


def run_pairwise(circuit: PairCircuit, x: Bitstream, y: Bitstream, flush: bool = False):
    return circuit(x, y, flush=flush)


def shuffle_batch(x: np.ndarray, depth: int, rng: RngConfig):
    """Independent shuffle buffers (same auxiliary sequence) over each row.

    Returns ``(out, final_memory)``.
    """
    x = np.atleast_2d(np.asarray(x, dtype=bool))
    m, n = x.shape
    aux = rng.sequence(n, depth + 1)
    mem = np.tile(initial_buffer(depth), (m, 1))
    out = x.copy()
    for t, r in enumerate(aux):
        if r < depth:
            out[:, t] = mem[:, r]
            mem[:, r] = x[:, t]
    return out, mem


@dataclass(frozen=True)
class Decorrelator(PairCircuit):
    depth: int = 4
    rng_a: RngConfig = RngConfig("halton", base=2)
    rng_b: RngConfig = RngConfig("halton", base=3)

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("buffer depth must be >= 1")
        if self.rng_a == self.rng_b:
            raise ValueError("the two shuffle buffers need different generators")

    def run_arrays(self, x, y, flush=False):
        if flush:
            raise ValueError("flush applies to synchronizers and desynchronizers only")
        xo, mx = shuffle_batch(x, self.depth, self.rng_a)
        yo, my = shuffle_batch(y, self.depth, self.rng_b)
        return xo, yo, (mx, my)


def decorrelate(x: Bitstream, y: Bitstream, depth: int = 4,
                rng_a: RngConfig | None = None, rng_b: RngConfig | None = None):
    circuit = Decorrelator(depth, rng_a or RngConfig("halton", base=2),
                           rng_b or RngConfig("halton", base=3))
    return circuit(x, y)


@dataclass(frozen=True)
class IsolatorPair(PairCircuit):
    """One-cycle delay on X; Y passes through."""

    init: int = 0

    def run_arrays(self, x, y, flush=False):
        if flush:
            raise ValueError("flush applies to synchronizers and desynchronizers only")
        xo = np.empty_like(x)
        xo[:, 0] = bool(self.init)
        xo[:, 1:] = x[:, :-1]
        return xo, np.array(y, copy=True), None
