"""Closed-form security/QoS power allocation for a fixed path.

Two symmetric constrained problems, both solved exactly by Lagrange
stationarity in the variables F_k = P_k^(2/alpha):

* secrecy-constrained (minimize COP subject to SOP <= beta_so):
      P_k = ( -ln(1 - beta_so) / B_so * d_k / sum_j d_j )^(alpha/2)
* QoS-constrained (minimize SOP subject to COP <= beta_co):
      P_k = ( -A_co / ln(1 - beta_co) * (sum_j d_j) * d_k )^(alpha/2)

Both optima share one achievable-value expression in which every
jammer-related quantity cancels:

      1 - exp( lambda_e * pi / ln(1 - beta) * (gamma_c / gamma_e)^(2/alpha)
               * (sum_j d_j)^2 )
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .outage import a_co, b_so, path_cop, path_sop
from .params import OutageConstraint, ParameterError, PathSpec, SystemParams
from .rng import PURPOSE_PERTURB, Stream

__all__ = [
    "PowerAllocation",
    "VerificationReport",
    "optimal_outage_value",
    "solve_so_cop",
    "solve_qo_sop",
    "verify_optimality",
]

# Agreement required between the simplified optimal-value expression and the
# path formulas applied to the returned powers; a mismatch means one of the
# two transcriptions is wrong.
_CROSS_CHECK_RTOL = 1e-9

SO_COP = "SO-COP"
QO_SOP = "QO-SOP"


@dataclass(frozen=True)
class PowerAllocation:
    """Per-hop transmit powers with the outage pair they achieve."""

    powers: tuple
    objective_kind: str
    achieved_cop: float
    achieved_sop: float
    constraint: OutageConstraint

    def __post_init__(self):
        if self.objective_kind not in (SO_COP, QO_SOP):
            raise ParameterError(f"unknown objective kind {self.objective_kind!r}")
        if any(p <= 0 for p in self.powers):
            raise ParameterError("allocation powers must be positive")


def optimal_outage_value(total_length: float, params: SystemParams, beta: float) -> float:
    """Achievable optimum shared by both problems; independent of lambda_j and p_jam."""
    exponent = (
        params.lambda_e
        * math.pi
        / math.log1p(-beta)
        * (params.gamma_c / params.gamma_e) ** (2.0 / params.alpha)
        * total_length**2
    )
    return -math.expm1(exponent)


def _cross_check(label: str, simplified: float, recomputed: float) -> None:
    if not math.isclose(simplified, recomputed, rel_tol=_CROSS_CHECK_RTOL, abs_tol=1e-15):
        raise ArithmeticError(
            f"{label}: simplified optimum {simplified!r} disagrees with the "
            f"path formula on the returned powers {recomputed!r}"
        )


def solve_so_cop(path: PathSpec, params: SystemParams, beta_so: float) -> PowerAllocation:
    """Minimize path COP subject to path SOP <= beta_so (constraint held active)."""
    constraint = OutageConstraint("secrecy", beta_so)
    if params.lambda_e <= 0:
        raise ParameterError("lambda_e must be positive: with no eavesdroppers the secrecy constraint is vacuous")
    budget = -math.log1p(-constraint.beta) / b_so(params)  # sum of F_k
    total = path.total_length
    half_alpha = params.alpha / 2.0
    powers = tuple((budget * d / total) ** half_alpha for d in path.distances)
    achieved_cop = optimal_outage_value(total, params, constraint.beta)
    solved = path.with_powers(powers)
    _cross_check(SO_COP, achieved_cop, path_cop(solved, params).probability)
    _cross_check(SO_COP + " constraint", constraint.beta, path_sop(solved, params).probability)
    return PowerAllocation(powers, SO_COP, achieved_cop, constraint.beta, constraint)


def solve_qo_sop(path: PathSpec, params: SystemParams, beta_co: float) -> PowerAllocation:
    """Minimize path SOP subject to path COP <= beta_co (constraint held active)."""
    constraint = OutageConstraint("connection", beta_co)
    scale = -a_co(params) / math.log1p(-constraint.beta) * path.total_length
    half_alpha = params.alpha / 2.0
    powers = tuple((scale * d) ** half_alpha for d in path.distances)
    achieved_sop = optimal_outage_value(path.total_length, params, constraint.beta)
    solved = path.with_powers(powers)
    _cross_check(QO_SOP, achieved_sop, path_sop(solved, params).probability)
    _cross_check(QO_SOP + " constraint", constraint.beta, path_cop(solved, params).probability)
    return PowerAllocation(powers, QO_SOP, constraint.beta, achieved_sop, constraint)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the random-perturbation optimality check."""

    trials: int
    best_relative_improvement: float
    counterexample: Optional[tuple]

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def verify_optimality(
    allocation: PowerAllocation,
    path: PathSpec,
    params: SystemParams,
    trials: int,
    stream: Stream,
    rel_threshold: float = 1e-9,
) -> VerificationReport:
    """Probe the constraint surface with random feasible perturbations.

    Perturbs the allocation in F-space, renormalizes back onto the active
    equality constraint, and reports any perturbation that improves the
    objective by more than ``rel_threshold`` relative.  This is a test
    oracle, not a production path; the closed forms are exact.
    """
    if trials < 1:
        raise ParameterError(f"trials must be at least 1, got {trials}")
    two_over_alpha = 2.0 / params.alpha
    d = np.asarray(path.distances)
    f = np.asarray([p**two_over_alpha for p in allocation.powers])
    if allocation.objective_kind == SO_COP:
        budget = f.sum()  # sum F_k = epsilon_so
        objective0 = float((d * d / f).sum())
    else:
        budget = float((d * d / f).sum())  # sum d^2/F_k = epsilon_co
        objective0 = float(f.sum())

    key = np.uint64(stream.key)
    best_improvement = -math.inf
    counterexample = None
    k = len(f)
    for t in range(trials):
        trial_stream = Stream(stream.seed, PURPOSE_PERTURB, stream.round_index + t, stream.lane)
        u = np.array([trial_stream.uniform(i) for i in range(k)])
        factors = np.exp((u - 0.5))  # multiplicative jitter, roughly +/- 65%
        g = f * factors
        if allocation.objective_kind == SO_COP:
            g *= budget / g.sum()
            objective = float((d * d / g).sum())
        else:
            g *= float((d * d / g).sum()) / budget
            objective = float(g.sum())
        improvement = (objective0 - objective) / objective0
        if improvement > best_improvement:
            best_improvement = improvement
            if improvement > rel_threshold:
                half_alpha = params.alpha / 2.0
                counterexample = tuple(float(x) ** half_alpha for x in g)
    return VerificationReport(trials, best_improvement, counterexample)
