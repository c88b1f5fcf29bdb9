"""Channel-level Monte Carlo estimation of connection and secrecy outage.

Every simulation round redraws the jammer (and, for secrecy, eavesdropper)
point processes and all channel states independently for every hop, matching
the independence the closed-form path products assume.

Rounds are partitioned into fixed-size batches addressed by round index;
batch results are integer outage counts summed exactly, so estimates are
bit-identical for any thread count or batch execution order.

Implementation note on fading: inside the path estimators the Rayleigh
fading gains are integrated out analytically.  Conditioned on the sampled
point positions, a hop outage is a Bernoulli event whose probability has a
closed product form over the interferers, so drawing that Bernoulli directly
is distributionally identical to drawing every fading gain and comparing
SIRs, at a fraction of the cost.  ``simulate_link_sir`` keeps explicit
per-draw fading for the link-level signal model.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numba import njit, uint64

from .geometry import PointSet, Region
from .outage import path_cop, path_sop
from .params import ParameterError, PathSpec, SystemParams
from .rng import (
    PURPOSE_COP,
    PURPOSE_LINK_SIR,
    PURPOSE_SOP_EAVE,
    PURPOSE_SOP_JAM,
    Stream,
    exp1,
    poisson_draw,
    stream_key,
    uniform01,
)

__all__ = [
    "SimConfig",
    "SimEstimate",
    "HopPlacement",
    "centered_layout",
    "simulate_link_sir",
    "estimate_path_cop",
    "estimate_path_sop",
    "estimate_cop_grid",
    "estimate_sop_grid",
]

# Rounds per addressable batch; fixed so partitioning never affects streams.
BATCH_ROUNDS = 8192

# Maximum number of lanes sharing one point-process realization in a grid kernel.
_MAX_LANES = 64


@dataclass(frozen=True)
class HopPlacement:
    """Transmitter/receiver coordinates and transmit power of one hop."""

    tx: tuple
    rx: tuple
    power: float

    def __post_init__(self):
        if self.tx == self.rx:
            raise ParameterError("hop transmitter and receiver must be distinct")
        if self.power < 0:
            raise ParameterError(f"hop power must be nonnegative, got {self.power}")

    @property
    def distance(self) -> float:
        return math.hypot(self.rx[0] - self.tx[0], self.rx[1] - self.tx[1])


def centered_layout(
    distances: Sequence[float], powers: Sequence[float], region: Region
) -> tuple:
    """Place each hop horizontally through the window center.

    Each hop gets its own point-process realization per round, so hops need
    not be chained; centering keeps the truncation symmetric.
    """
    cx, cy = region.width / 2.0, region.height / 2.0
    layout = []
    for d, p in zip(distances, powers):
        if d <= 0:
            raise ParameterError(f"hop distance must be positive, got {d}")
        layout.append(HopPlacement((cx - d / 2.0, cy), (cx + d / 2.0, cy), p))
    return tuple(layout)


@dataclass(frozen=True)
class SimConfig:
    """A Monte Carlo task: a placed path, a window, a round count and a seed."""

    rounds: int
    region: Region
    link_layout: tuple
    seed: int

    def __post_init__(self):
        if self.rounds < 1:
            raise ParameterError(f"rounds must be at least 1, got {self.rounds}")
        if not self.link_layout:
            raise ParameterError("link_layout needs at least one hop")
        for hop in self.link_layout:
            for x, y in (hop.tx, hop.rx):
                if not self.region.contains(x, y):
                    raise ParameterError(f"hop endpoint ({x}, {y}) lies outside the region")

    @classmethod
    def for_path(cls, path: PathSpec, region: Region, rounds: int, seed: int) -> "SimConfig":
        return cls(rounds, region, centered_layout(path.distances, path.powers, region), seed)


@dataclass(frozen=True)
class SimEstimate:
    """Outage-count estimator with its binomial standard error."""

    outage_count: int
    rounds: int

    def __post_init__(self):
        if not (0 <= self.outage_count <= self.rounds):
            raise ParameterError("outage_count must lie in [0, rounds]")

    @property
    def estimate(self) -> float:
        return self.outage_count / self.rounds

    @property
    def std_error(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1.0 - p) / self.rounds)


# ---------------------------------------------------------------------------
# link-level SIR with explicit fading


@njit(cache=True, nogil=True)
def _link_sir(key, p_tx, d_link, jx, jy, rx, ry, p_jam, alpha):
    idx = uint64(0)
    signal = p_tx * exp1(key, idx) / d_link ** alpha
    idx += uint64(1)
    interference = 0.0
    for j in range(jx.shape[0]):
        dx = jx[j] - rx
        dy = jy[j] - ry
        r2 = dx * dx + dy * dy
        interference += p_jam * exp1(key, idx) / r2 ** (0.5 * alpha)
        idx += uint64(1)
    return signal / interference


def simulate_link_sir(
    tx: tuple,
    rx: tuple,
    p_tx: float,
    jammers: PointSet,
    params: SystemParams,
    stream: Stream,
) -> float:
    """One SIR realization of a single link under the interference-limited model.

    Fresh unit-mean exponential fading is drawn for the main link and every
    jammer-to-receiver link; the jammer set must be non-empty since without
    interferers the SIR is undefined.
    """
    if tuple(tx) == tuple(rx):
        raise ParameterError("transmitter and receiver must be distinct")
    if len(jammers) == 0:
        raise ParameterError("jammer set must be non-empty in the interference-limited model")
    if p_tx < 0:
        raise ParameterError(f"transmit power must be nonnegative, got {p_tx}")
    d_link = math.hypot(rx[0] - tx[0], rx[1] - tx[1])
    return float(
        _link_sir(
            np.uint64(stream.key),
            p_tx,
            d_link,
            np.ascontiguousarray(jammers.coords[:, 0]),
            np.ascontiguousarray(jammers.coords[:, 1]),
            rx[0],
            rx[1],
            params.p_jam,
            params.alpha,
        )
    )


# ---------------------------------------------------------------------------
# connection-outage kernel
#
# Conditioned on jammer positions, hop outage is Bernoulli with probability
# 1 - prod_j 1 / (1 + c / r_j^alpha) where c = gamma_c * p_jam * d^alpha / P.
# The kernel draws u first and accumulates the product D = prod (1 + c/r^alpha);
# outage is decided as soon as u * D exceeds 1, which permits early exit.
# Lanes are path variants evaluated on the shared jammer realization (common
# random numbers); each lane is exactly binomial on its own.


_BLOCK = 512


@njit(cache=True, nogil=True)
def _cop_batch(seed, round_lo, round_hi, jam_mean, width, height, rxs, rys, cvals, alpha):
    n_hops, n_lanes = cvals.shape
    counts = np.zeros(n_lanes, np.int64)
    out = np.empty(n_lanes, np.bool_)
    ds = np.empty(n_lanes, np.float64)
    us = np.empty(n_lanes, np.float64)
    tbuf = np.empty(_BLOCK, np.float64)
    alpha_is_4 = alpha == 4.0
    neg_half_alpha = -0.5 * alpha
    for r in range(round_lo, round_hi):
        for i in range(n_lanes):
            out[i] = False
        remaining = n_lanes
        for k in range(n_hops):
            if remaining == 0:
                break
            key = stream_key(uint64(seed), uint64(PURPOSE_COP), uint64(r), uint64(k))
            for i in range(n_lanes):
                us[i] = uniform01(key, uint64(i))
                ds[i] = 1.0
            nj, idx = poisson_draw(key, uint64(n_lanes), jam_mean)
            rx = rxs[k]
            ry = rys[k]
            done = 0
            while done < nj and remaining > 0:
                m = min(_BLOCK, nj - done)
                base = idx + uint64(2 * done)
                # Independent counter-addressed draws: no loop-carried state.
                for b in range(m):
                    x = uniform01(key, base + uint64(2 * b)) * width
                    y = uniform01(key, base + uint64(2 * b + 1)) * height
                    dx = x - rx
                    dy = y - ry
                    r2 = dx * dx + dy * dy
                    if alpha_is_4:
                        tbuf[b] = 1.0 / (r2 * r2)
                    else:
                        tbuf[b] = r2**neg_half_alpha
                for i in range(n_lanes):
                    if out[i]:
                        continue
                    c = cvals[k, i]
                    d = ds[i]
                    for b in range(m):
                        d *= 1.0 + c * tbuf[b]
                    ds[i] = d
                    # D only grows, so crossing 1/u is a final outage verdict.
                    if us[i] * d > 1.0:
                        out[i] = True
                        remaining -= 1
                done += m
        for i in range(n_lanes):
            if out[i]:
                counts[i] += 1
    return counts


# ---------------------------------------------------------------------------
# secrecy-outage kernel
#
# Conditioned on positions, an eavesdropper at squared distance d2 from the
# transmitter intercepts with probability prod_j 1 / (1 + c_e / r_j^alpha),
# c_e = gamma_e * p_jam * d2^(alpha/2) / P.  The product only shrinks as
# jammers accumulate, so a non-interception verdict (u * D > 1) is final the
# moment it holds, which keeps the per-eavesdropper cost far below the full
# jammer count.  Lanes are eavesdropper densities sharing one jammer
# realization per hop-round.


@njit(cache=True, nogil=True)
def _sop_batch(
    seed,
    round_lo,
    round_hi,
    jam_mean,
    width,
    height,
    txs,
    tys,
    gep,
    eave_means,
    alpha,
):
    n_hops = txs.shape[0]
    n_lanes = eave_means.shape[0]
    counts = np.zeros(n_lanes, np.int64)
    out = np.empty(n_lanes, np.bool_)
    cap = int(jam_mean + 12.0 * math.sqrt(jam_mean + 1.0)) + 64
    jx = np.empty(cap, np.float64)
    jy = np.empty(cap, np.float64)
    alpha_is_4 = alpha == 4.0
    half_alpha = 0.5 * alpha
    for r in range(round_lo, round_hi):
        for i in range(n_lanes):
            out[i] = False
        remaining = n_lanes
        for k in range(n_hops):
            if remaining == 0:
                break
            jkey = stream_key(uint64(seed), uint64(PURPOSE_SOP_JAM), uint64(r), uint64(k))
            nj, idx = poisson_draw(jkey, uint64(0), jam_mean)
            if nj > jx.shape[0]:
                jx = np.empty(nj, np.float64)
                jy = np.empty(nj, np.float64)
            for j in range(nj):
                jx[j] = uniform01(jkey, idx + uint64(2 * j)) * width
                jy[j] = uniform01(jkey, idx + uint64(2 * j + 1)) * height
            tx = txs[k]
            ty = tys[k]
            for i in range(n_lanes):
                if out[i]:
                    continue
                ekey = stream_key(
                    uint64(seed),
                    uint64(PURPOSE_SOP_EAVE),
                    uint64(r),
                    uint64(k * _MAX_LANES + i),
                )
                ne, eidx = poisson_draw(ekey, uint64(0), eave_means[i])
                for e in range(ne):
                    base = eidx + uint64(3 * e)
                    ex = uniform01(ekey, base) * width
                    ey = uniform01(ekey, base + uint64(1)) * height
                    u = uniform01(ekey, base + uint64(2))
                    dx = ex - tx
                    dy = ey - ty
                    d2 = dx * dx + dy * dy
                    if alpha_is_4:
                        ce = gep[k] * d2 * d2
                    else:
                        ce = gep[k] * d2 ** half_alpha
                    d_prod = 1.0
                    intercepted = True
                    for j in range(nj):
                        rdx = jx[j] - ex
                        rdy = jy[j] - ey
                        r2 = rdx * rdx + rdy * rdy
                        if alpha_is_4:
                            d_prod *= 1.0 + ce / (r2 * r2)
                        else:
                            d_prod *= 1.0 + ce * r2 ** (-half_alpha)
                        # Jamming already drowns this eavesdropper; verdict is final.
                        if u * d_prod > 1.0:
                            intercepted = False
                            break
                    if intercepted:
                        out[i] = True
                        remaining -= 1
                        break
        for i in range(n_lanes):
            if out[i]:
                counts[i] += 1
    return counts


# ---------------------------------------------------------------------------
# batched drivers


def _run_batches(kernel_call, rounds: int, threads: int) -> np.ndarray:
    edges = list(range(0, rounds, BATCH_ROUNDS)) + [rounds]
    spans = [(edges[i], edges[i + 1]) for i in range(len(edges) - 1)]
    if threads <= 1 or len(spans) == 1:
        results = [kernel_call(lo, hi) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: kernel_call(*s), spans))
    total = results[0].copy()
    for part in results[1:]:
        total += part
    return total


def _cop_counts(
    seed: int,
    rounds: int,
    region: Region,
    lambda_j: float,
    rxs: np.ndarray,
    rys: np.ndarray,
    cvals: np.ndarray,
    alpha: float,
    threads: int,
) -> np.ndarray:
    jam_mean = lambda_j * region.area
    call = lambda lo, hi: _cop_batch(
        np.uint64(seed), lo, hi, jam_mean, region.width, region.height, rxs, rys, cvals, alpha
    )
    return _run_batches(call, rounds, threads)


def _sop_counts(
    seed: int,
    rounds: int,
    region: Region,
    lambda_j: float,
    txs: np.ndarray,
    tys: np.ndarray,
    gep: np.ndarray,
    eave_means: np.ndarray,
    alpha: float,
    threads: int,
) -> np.ndarray:
    if eave_means.shape[0] > _MAX_LANES:
        raise ParameterError(f"at most {_MAX_LANES} eavesdropper densities per kernel call")
    jam_mean = lambda_j * region.area
    call = lambda lo, hi: _sop_batch(
        np.uint64(seed),
        lo,
        hi,
        jam_mean,
        region.width,
        region.height,
        txs,
        tys,
        gep,
        eave_means,
        alpha,
    )
    return _run_batches(call, rounds, threads)


def estimate_path_cop(cfg: SimConfig, params: SystemParams, threads: int = 1) -> SimEstimate:
    """Monte Carlo end-to-end connection outage: outage when any hop SIR < gamma_c."""
    powers = [hop.power for hop in cfg.link_layout]
    if any(p <= 0 for p in powers):
        raise ParameterError("every hop needs a positive transmit power")
    if params.gamma_c == 0.0:
        # SIR is almost surely positive, so outage never occurs.
        return SimEstimate(0, cfg.rounds)
    n_hops = len(cfg.link_layout)
    rxs = np.array([hop.rx[0] for hop in cfg.link_layout])
    rys = np.array([hop.rx[1] for hop in cfg.link_layout])
    cvals = np.empty((n_hops, 1))
    for k, hop in enumerate(cfg.link_layout):
        cvals[k, 0] = params.gamma_c * params.p_jam * hop.distance ** params.alpha / hop.power
    counts = _cop_counts(
        cfg.seed, cfg.rounds, cfg.region, params.lambda_j, rxs, rys, cvals, params.alpha, threads
    )
    return SimEstimate(int(counts[0]), cfg.rounds)


def estimate_path_sop(cfg: SimConfig, params: SystemParams, threads: int = 1) -> SimEstimate:
    """Monte Carlo end-to-end secrecy outage: outage when any eavesdropper
    overhears any hop at SIR > gamma_e (no combining across hops)."""
    powers = [hop.power for hop in cfg.link_layout]
    if any(p <= 0 for p in powers):
        raise ParameterError("every hop needs a positive transmit power")
    if params.lambda_e == 0.0:
        return SimEstimate(0, cfg.rounds)
    txs = np.array([hop.tx[0] for hop in cfg.link_layout])
    tys = np.array([hop.tx[1] for hop in cfg.link_layout])
    gep = np.array([params.gamma_e * params.p_jam / p for p in powers])
    eave_means = np.array([params.lambda_e * cfg.region.area])
    counts = _sop_counts(
        cfg.seed, cfg.rounds, cfg.region, params.lambda_j, txs, tys, gep, eave_means,
        params.alpha, threads,
    )
    return SimEstimate(int(counts[0]), cfg.rounds)


@dataclass(frozen=True)
class GridPoint:
    """One validation-grid result: simulated estimate plus its closed-form value."""

    estimate: SimEstimate
    closed_form: float


def estimate_cop_grid(
    distances: Sequence[float],
    n_hops: int,
    power: float,
    params: SystemParams,
    region: Region,
    rounds: int,
    seed: int,
    threads: int = 1,
) -> tuple:
    """Estimate uniform-path COP for several hop distances on shared jammer draws.

    Sharing the realization across distances is a common-random-numbers
    device: each point remains exactly binomial around its own probability.
    """
    if not distances:
        raise ParameterError("distances grid must be non-empty")
    if len(distances) > _MAX_LANES:
        raise ParameterError(f"at most {_MAX_LANES} distances per grid call")
    cx, cy = region.width / 2.0, region.height / 2.0
    rxs = np.full(n_hops, cx)
    rys = np.full(n_hops, cy)
    cvals = np.empty((n_hops, len(distances)))
    for i, d in enumerate(distances):
        if d <= 0 or d > min(region.width, region.height):
            raise ParameterError(f"hop distance {d} does not fit the region")
        cvals[:, i] = params.gamma_c * params.p_jam * d ** params.alpha / power
    counts = _cop_counts(seed, rounds, region, params.lambda_j, rxs, rys, cvals, params.alpha, threads)
    points = []
    for i, d in enumerate(distances):
        path = PathSpec.uniform(n_hops, d, power)
        points.append(GridPoint(SimEstimate(int(counts[i]), rounds), path_cop(path, params).probability))
    return tuple(points)


def estimate_sop_grid(
    lambda_e_values: Sequence[float],
    n_hops: int,
    power: float,
    params: SystemParams,
    region: Region,
    rounds: int,
    seed: int,
    threads: int = 1,
) -> tuple:
    """Estimate uniform-path SOP for several eavesdropper densities on shared jammers."""
    if not lambda_e_values:
        raise ParameterError("lambda_e grid must be non-empty")
    if any(le < 0 for le in lambda_e_values):
        raise ParameterError("eavesdropper densities must be nonnegative")
    cx, cy = region.width / 2.0, region.height / 2.0
    txs = np.full(n_hops, cx)
    tys = np.full(n_hops, cy)
    gep = np.full(n_hops, params.gamma_e * params.p_jam / power)
    eave_means = np.array([le * region.area for le in lambda_e_values])
    counts = _sop_counts(
        seed, rounds, region, params.lambda_j, txs, tys, gep, eave_means, params.alpha, threads
    )
    points = []
    path = PathSpec.uniform(n_hops, 1.0, power)  # SOP ignores hop distances
    for i, le in enumerate(lambda_e_values):
        point_params = SystemParams(
            params.lambda_j, le, params.gamma_c, params.gamma_e, params.p_jam, params.alpha
        )
        points.append(
            GridPoint(SimEstimate(int(counts[i]), rounds), path_sop(path, point_params).probability)
        )
    return tuple(points)
