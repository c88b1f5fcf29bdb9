"""Counter-based random streams for reproducible parallel sampling.

Every draw is addressed by (seed, purpose, round, lane, draw index); nothing
is stateful, so Monte Carlo rounds can execute in any order, on any thread,
in any batch partitioning, and consume exactly the same numbers.

The generator is the splitmix64 sequence: draw ``j`` of a stream with key
``k`` is ``mix64(k + (j + 1) * GOLDEN)``.  splitmix64 passes the usual
empirical batteries and is more than adequate for Monte Carlo sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, uint64, int64, float64, types

__all__ = [
    "Stream",
    "stream_key",
    "uniform01",
    "exp1",
    "poisson_draw",
    "fill_uniform_points",
    "fill_exponentials",
    "PURPOSE_LEGIT",
    "PURPOSE_JAMMER",
    "PURPOSE_EAVES",
    "PURPOSE_COP",
    "PURPOSE_SOP_JAM",
    "PURPOSE_SOP_EAVE",
    "PURPOSE_LINK_SIR",
    "PURPOSE_PERTURB",
    "PURPOSE_ROW",
]

# Purpose tags separating logical uses of randomness under one experiment seed.
PURPOSE_LEGIT = 1
PURPOSE_JAMMER = 2
PURPOSE_EAVES = 3
PURPOSE_COP = 4
PURPOSE_SOP_JAM = 5
PURPOSE_SOP_EAVE = 6
PURPOSE_LINK_SIR = 7
PURPOSE_PERTURB = 8
PURPOSE_ROW = 9

_GOLDEN = uint64(0x9E3779B97F4A7C15)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(uint64(uint64), cache=True, inline="always")
def _mix64(z):
    z = (z ^ (z >> uint64(30))) * uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> uint64(27))) * uint64(0x94D049BB133111EB)
    return z ^ (z >> uint64(31))


@njit(uint64(uint64, uint64, uint64, uint64), cache=True)
def stream_key(seed, purpose, round_index, lane):
    """Derive the 64-bit key of the stream addressed by (seed, purpose, round, lane)."""
    k = _mix64(seed + _GOLDEN)
    k = _mix64(k + purpose * _GOLDEN)
    k = _mix64(k + round_index * _GOLDEN)
    k = _mix64(k + lane * _GOLDEN)
    return k


@njit(uint64(uint64, uint64), cache=True, inline="always")
def _bits(key, idx):
    return _mix64(key + (idx + uint64(1)) * _GOLDEN)


@njit(float64(uint64, uint64), cache=True, inline="always")
def uniform01(key, idx):
    """Draw ``idx`` of stream ``key``, uniform on [0, 1)."""
    return (_bits(key, idx) >> uint64(11)) * _INV53


@njit(float64(uint64, uint64), cache=True, inline="always")
def exp1(key, idx):
    """Unit-mean exponential draw (Rayleigh fading power gain)."""
    return -math.log1p(-uniform01(key, idx))


# Signatures are pinned on every dispatcher callable from Python: lazy numba
# dispatch would otherwise type a Python-int key or index as int64, and mixed
# int64/uint64 arithmetic silently promotes to float64, corrupting the hash.
@njit(types.Tuple((int64, uint64))(uint64, uint64, float64), cache=True, nogil=True)
def poisson_draw(key, idx, mean):
    """Exact Poisson(mean) draw consuming a variable number of uniforms.

    Returns ``(count, next_idx)``.  Uses Knuth multiplication below mean 10
    and Hormann's PTRS transformed rejection above, so means in the tens of
    thousands cost only a few uniforms.
    """
    if mean <= 0.0:
        return 0, idx
    if mean < 10.0:
        limit = math.exp(-mean)
        k = 0
        p = 1.0
        while True:
            p *= uniform01(key, idx)
            idx += uint64(1)
            if p <= limit:
                return k, idx
            k += 1
    b = 0.931 + 2.53 * math.sqrt(mean)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2.0)
    log_mean = math.log(mean)
    while True:
        u = uniform01(key, idx) - 0.5
        idx += uint64(1)
        v = uniform01(key, idx)
        idx += uint64(1)
        us = 0.5 - abs(u)
        k = int(math.floor((2.0 * a / us + b) * u + mean + 0.43))
        if us >= 0.07 and v <= vr:
            return k, idx
        if k < 0 or (us < 0.013 and v > us):
            continue
        if math.log(v * inv_alpha / (a / (us * us) + b)) <= (
            k * log_mean - mean - math.lgamma(k + 1.0)
        ):
            return k, idx


@njit(uint64(uint64, uint64, float64[:, ::1], float64, float64), cache=True, nogil=True)
def fill_uniform_points(key, idx, out, width, height):
    """Fill an (n, 2) array with uniform positions; returns the next draw index."""
    for i in range(out.shape[0]):
        out[i, 0] = uniform01(key, idx) * width
        idx += uint64(1)
        out[i, 1] = uniform01(key, idx) * height
        idx += uint64(1)
    return idx


@njit(uint64(uint64, uint64, float64[::1]), cache=True, nogil=True)
def fill_exponentials(key, idx, out):
    for i in range(out.shape[0]):
        out[i] = exp1(key, idx)
        idx += uint64(1)
    return idx


@dataclass(frozen=True)
class Stream:
    """A convenience handle over one addressed stream for scalar use."""

    seed: int
    purpose: int
    round_index: int = 0
    lane: int = 0

    @property
    def key(self) -> int:
        return int(
            stream_key(
                np.uint64(self.seed),
                np.uint64(self.purpose),
                np.uint64(self.round_index),
                np.uint64(self.lane),
            )
        )

    def at_round(self, round_index: int, lane: int = 0) -> "Stream":
        return Stream(self.seed, self.purpose, round_index, lane)

    def uniform(self, idx: int = 0) -> float:
        return float(uniform01(np.uint64(self.key), np.uint64(idx)))

    def exponential(self, idx: int = 0) -> float:
        return float(exp1(np.uint64(self.key), np.uint64(idx)))

    def poisson(self, mean: float, idx: int = 0):
        n, nxt = poisson_draw(np.uint64(self.key), np.uint64(idx), float(mean))
        return int(n), int(nxt)
