"""Core domain types: network parameters, paths, and outage constraints.

All quantities are unit-bare real numbers (densities in points per unit
area, powers in common power units, distances in length units).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = [
    "ParameterError",
    "SystemParams",
    "Hop",
    "PathSpec",
    "OutageConstraint",
    "validate_params",
    "rates_to_thresholds",
]

# Guard band keeping outage constraints away from the log singularities at 0 and 1.
BETA_GUARD = 1e-12


class ParameterError(ValueError):
    """A domain parameter violates its invariant; the message names the field."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SystemParams:
    """Network-wide parameters shared by all outage formulas.

    lambda_j: jammer density (points per unit area), strictly positive.
    lambda_e: eavesdropper density (points per unit area), nonnegative.
    gamma_c:  SIR threshold for correct decoding at the legitimate receiver.
    gamma_e:  SIR threshold for successful interception at an eavesdropper.
    p_jam:    common jammer transmit power, strictly positive.
    alpha:    path-loss exponent, strictly greater than 2.
    """

    lambda_j: float
    lambda_e: float
    gamma_c: float
    gamma_e: float
    p_jam: float
    alpha: float

    def __post_init__(self):
        for name in ("lambda_j", "lambda_e", "gamma_c", "gamma_e", "p_jam", "alpha"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if self.lambda_j <= 0:
            raise ParameterError(f"lambda_j must be positive, got {self.lambda_j}")
        if self.lambda_e < 0:
            raise ParameterError(f"lambda_e must be nonnegative, got {self.lambda_e}")
        if self.gamma_c < 0:
            raise ParameterError(f"gamma_c must be nonnegative, got {self.gamma_c}")
        if self.gamma_e <= 0:
            raise ParameterError(f"gamma_e must be positive, got {self.gamma_e}")
        if self.p_jam <= 0:
            raise ParameterError(f"p_jam must be positive, got {self.p_jam}")
        if self.alpha <= 2:
            # The gamma-function constants diverge at alpha = 2; rejecting is
            # safer than clamping, which would silently falsify outputs.
            raise ParameterError(f"alpha must exceed 2, got {self.alpha}")


def validate_params(
    lambda_j: float,
    lambda_e: float,
    gamma_c: float,
    gamma_e: float,
    p_jam: float,
    alpha: float,
) -> SystemParams:
    """Build a validated :class:`SystemParams`, raising ParameterError on any violation."""
    return SystemParams(lambda_j, lambda_e, gamma_c, gamma_e, p_jam, alpha)


@dataclass(frozen=True)
class Hop:
    """One link of a path: a positive distance, optionally with a transmit power."""

    distance: float
    power: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "distance", _require_finite("distance", self.distance))
        if self.distance <= 0:
            raise ParameterError(f"hop distance must be positive, got {self.distance}")
        if self.power is not None:
            object.__setattr__(self, "power", _require_finite("power", self.power))
            if self.power <= 0:
                raise ParameterError(f"hop power must be positive, got {self.power}")


@dataclass(frozen=True)
class PathSpec:
    """An ordered multi-hop path described by hop distances and optional powers."""

    hops: tuple

    def __post_init__(self):
        hops = tuple(self.hops)
        if not hops:
            raise ParameterError("a path needs at least one hop")
        if not all(isinstance(h, Hop) for h in hops):
            raise ParameterError("hops must be Hop instances")
        object.__setattr__(self, "hops", hops)

    @classmethod
    def from_distances(
        cls, distances: Sequence[float], powers: Optional[Sequence[float]] = None
    ) -> "PathSpec":
        if powers is None:
            return cls(tuple(Hop(d) for d in distances))
        if len(powers) != len(distances):
            raise ParameterError("powers and distances must have equal length")
        return cls(tuple(Hop(d, p) for d, p in zip(distances, powers)))

    @classmethod
    def uniform(cls, n_hops: int, distance: float, power: Optional[float] = None) -> "PathSpec":
        if n_hops < 1:
            raise ParameterError(f"n_hops must be at least 1, got {n_hops}")
        return cls(tuple(Hop(distance, power) for _ in range(n_hops)))

    def __len__(self) -> int:
        return len(self.hops)

    @property
    def distances(self) -> tuple:
        return tuple(h.distance for h in self.hops)

    @property
    def powers(self) -> tuple:
        if any(h.power is None for h in self.hops):
            raise ParameterError("path has hops without transmit powers")
        return tuple(h.power for h in self.hops)

    @property
    def has_powers(self) -> bool:
        return all(h.power is not None for h in self.hops)

    @property
    def total_length(self) -> float:
        return math.fsum(self.distances)

    def with_powers(self, powers: Sequence[float]) -> "PathSpec":
        return PathSpec.from_distances(self.distances, powers)


@dataclass(frozen=True)
class OutageConstraint:
    """A probability bound on one of the two outage metrics.

    kind is "secrecy" (a bound beta_so on SOP) or "connection" (beta_co on COP).
    """

    kind: str
    beta: float

    def __post_init__(self):
        if self.kind not in ("secrecy", "connection"):
            raise ParameterError(f"constraint kind must be 'secrecy' or 'connection', got {self.kind!r}")
        beta = _require_finite("beta", self.beta)
        if not (BETA_GUARD <= beta <= 1 - BETA_GUARD):
            raise ParameterError(f"beta must lie strictly inside (0, 1), got {beta}")
        object.__setattr__(self, "beta", beta)


def rates_to_thresholds(r_t: float, r_s: float) -> tuple:
    """Convert Wyner code rates (bits/use) to the pair of SIR thresholds.

    The codeword rate ``r_t`` maps to the decoding threshold ``2**r_t - 1`` and
    the rate redundancy ``r_t - r_s`` maps to the interception threshold
    ``2**(r_t - r_s) - 1``.

    Note the second threshold is 0 when r_s == r_t; such a value is valid
    output here but is rejected by the secrecy-outage analytics.
    """
    r_t = _require_finite("r_t", r_t)
    r_s = _require_finite("r_s", r_s)
    if r_s < 0:
        raise ParameterError(f"r_s must be nonnegative, got {r_s}")
    if r_t < r_s:
        raise ParameterError(f"r_s ({r_s}) may not exceed r_t ({r_t})")
    gamma_c = 2.0 ** r_t - 1.0
    gamma_e = 2.0 ** (r_t - r_s) - 1.0
    return gamma_c, gamma_e
