"""Closed-form connection and secrecy outage probabilities.

Both path expressions share the exponential-of-sums shape

    COP = 1 - exp(-A_co * sum_k d_k^2 * P_k^(-2/alpha))
    SOP = 1 - exp(-B_so * sum_k P_k^(2/alpha))

with constants

    A_co = lambda_j * pi * (gamma_c * p_jam)^(2/alpha) * G(alpha)
    B_so = (lambda_e / lambda_j) / ((gamma_e * p_jam)^(2/alpha) * G(alpha))
    G(alpha) = Gamma(1 - 2/alpha) * Gamma(1 + 2/alpha)

The SOP expression is a Jensen upper bound on the true secrecy outage
probability (the derivation swaps an expectation over jammer positions with
an exponential); simulation treats it as a bound, not an exact target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import ParameterError, PathSpec, SystemParams

__all__ = [
    "OutageValue",
    "gamma_factor",
    "a_co",
    "b_so",
    "link_cop",
    "path_cop",
    "link_sop",
    "path_sop",
]


@dataclass(frozen=True)
class OutageValue:
    """An outage probability tagged with its kind ('connection' or 'secrecy')."""

    probability: float
    kind: str

    def __post_init__(self):
        if self.kind not in ("connection", "secrecy"):
            raise ParameterError(f"unknown outage kind {self.kind!r}")
        if not (0.0 <= self.probability <= 1.0):
            raise ParameterError(f"outage probability out of range: {self.probability}")

    def __float__(self) -> float:
        return self.probability


def gamma_factor(alpha: float) -> float:
    """Gamma(1 - 2/alpha) * Gamma(1 + 2/alpha), defined only for alpha > 2.

    Computed through log-gamma; both arguments lie in (0, 2) where lgamma is
    accurate to machine precision, so the product carries ~15 significant
    digits.
    """
    if alpha <= 2:
        raise ParameterError(f"alpha must exceed 2, got {alpha}")
    x = 2.0 / alpha
    return math.exp(math.lgamma(1.0 - x) + math.lgamma(1.0 + x))


def a_co(params: SystemParams) -> float:
    """Connection-outage constant; scales the per-hop d^2 * P^(-2/alpha) terms."""
    x = 2.0 / params.alpha
    return params.lambda_j * math.pi * (params.gamma_c * params.p_jam) ** x * gamma_factor(params.alpha)


def b_so(params: SystemParams) -> float:
    """Secrecy-outage constant; scales the per-hop P^(2/alpha) terms.

    Diverges as gamma_e -> 0, so a zero interception threshold is rejected.
    """
    if params.gamma_e <= 0:
        raise ParameterError("gamma_e must be positive for secrecy analytics")
    x = 2.0 / params.alpha
    return (params.lambda_e / params.lambda_j) / (
        (params.gamma_e * params.p_jam) ** x * gamma_factor(params.alpha)
    )


def _check_positive(name: str, value: float) -> None:
    if value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")


def link_cop(d: float, p: float, params: SystemParams) -> OutageValue:
    """Connection outage probability of one hop of length ``d`` at power ``p``."""
    _check_positive("distance", d)
    _check_positive("power", p)
    exponent = a_co(params) * d * d * p ** (-2.0 / params.alpha)
    return OutageValue(-math.expm1(-exponent), "connection")


def path_cop(path: PathSpec, params: SystemParams) -> OutageValue:
    """End-to-end connection outage of a path with all hop powers assigned."""
    powers = path.powers
    x = -2.0 / params.alpha
    s = math.fsum(d * d * p ** x for d, p in zip(path.distances, powers))
    return OutageValue(-math.expm1(-a_co(params) * s), "connection")


def link_sop(p: float, params: SystemParams) -> OutageValue:
    """Secrecy outage probability of one hop at power ``p`` (Jensen upper bound)."""
    _check_positive("power", p)
    exponent = b_so(params) * p ** (2.0 / params.alpha)
    return OutageValue(-math.expm1(-exponent), "secrecy")


def path_sop(path: PathSpec, params: SystemParams) -> OutageValue:
    """End-to-end secrecy outage of a path with all hop powers assigned."""
    powers = path.powers
    x = 2.0 / params.alpha
    s = math.fsum(p ** x for p in powers)
    return OutageValue(-math.expm1(-b_so(params) * s), "secrecy")
