"""Experiment runners: parameter sweeps emitting CSV rows.

Each runner is a pure function of an :class:`ExperimentSpec` and returns
``(header, rows)`` where every row is a tuple of strings already formatted
for CSV.  Numeric fields use 12 significant digits so re-runs are
byte-comparable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .allocation import optimal_outage_value, solve_qo_sop, solve_so_cop
from .geometry import Region, Scenario, generate_scenario
from .montecarlo import estimate_cop_grid, estimate_sop_grid
from .outage import path_cop, path_sop
from .params import ParameterError, PathSpec, SystemParams
from .rng import PURPOSE_ROW, stream_key
from .routing import UnreachableError, route_qo_sop, route_so_cop

__all__ = [
    "ExperimentSpec",
    "TABLE_FIXTURES",
    "POWER_SWEEP",
    "run_validate_cop",
    "run_validate_sop",
    "run_tradeoff_curve",
    "run_optimal_tradeoff",
    "run_table_fixture",
    "run_route_demo",
]

# Transmission power sweep of the published COP-SOP tradeoff curves.
POWER_SWEEP = (0.0, 0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0)

# Fixed random-length paths used for the two golden tables: hop distances and
# the outage constraint applied to both optimization problems.
TABLE_FIXTURES = {
    "table1": ((3.5726, 7.8148, 7.7836, 4.4240, 6.1104), 0.5),
    "table2": ((6.6027, 4.6456, 5.9676, 4.7477, 5.3562), 0.4),
}

DEFAULT_REGION = Region(2000.0, 2000.0)
ROUTE_REGION = Region(20.0, 20.0)


def fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything a runner needs: base parameters, grids, seed, and scale."""

    kind: str
    params: SystemParams
    seed: int = 0
    rounds: int = 1_000_000
    threads: int = 1
    lambda_j_grid: tuple = ()
    lambda_e_grid: tuple = ()
    beta_grid: tuple = ()
    distances: tuple = (3.0, 4.0, 5.0)
    n_hops: int = 5
    power: float = 1.0
    beta_so: float = 0.4
    beta_co: float = 0.4
    max_range: float = 8.0
    n_legit: int = 20
    fixture: str = "table2"
    region: Region = field(default_factory=lambda: DEFAULT_REGION)


def _row_seed(seed: int, row: int) -> int:
    """Distinct derived seed per grid row so rows never share streams."""
    return int(stream_key(np.uint64(seed), np.uint64(PURPOSE_ROW), np.uint64(row), np.uint64(0)))


def run_validate_cop(spec: ExperimentSpec):
    """Closed-form vs Monte Carlo COP over a (lambda_j, distance) grid."""
    if not spec.lambda_j_grid or not spec.distances:
        raise ParameterError("validate-cop needs non-empty lambda_j and distance grids")
    header = (
        "lambda_j", "distance", "n_hops", "power", "rounds",
        "outage_count", "estimate", "std_error", "closed_form", "abs_diff",
    )
    rows = []
    for row_index, lam_j in enumerate(spec.lambda_j_grid):
        params = SystemParams(
            lam_j, spec.params.lambda_e, spec.params.gamma_c,
            spec.params.gamma_e, spec.params.p_jam, spec.params.alpha,
        )
        points = estimate_cop_grid(
            spec.distances, spec.n_hops, spec.power, params, spec.region,
            spec.rounds, _row_seed(spec.seed, row_index), spec.threads,
        )
        for d, point in zip(spec.distances, points):
            est = point.estimate
            rows.append((
                fmt(lam_j), fmt(d), fmt(spec.n_hops), fmt(spec.power), fmt(spec.rounds),
                fmt(est.outage_count), fmt(est.estimate), fmt(est.std_error),
                fmt(point.closed_form), fmt(abs(est.estimate - point.closed_form)),
            ))
    return header, rows


def run_validate_sop(spec: ExperimentSpec):
    """Closed-form bound vs Monte Carlo SOP over a (lambda_j, lambda_e) grid."""
    if not spec.lambda_j_grid or not spec.lambda_e_grid:
        raise ParameterError("validate-sop needs non-empty lambda_j and lambda_e grids")
    header = (
        "lambda_j", "lambda_e", "n_hops", "power", "rounds",
        "outage_count", "estimate", "std_error", "closed_form", "diff",
    )
    rows = []
    for row_index, lam_j in enumerate(spec.lambda_j_grid):
        params = SystemParams(
            lam_j, max(spec.lambda_e_grid), spec.params.gamma_c,
            spec.params.gamma_e, spec.params.p_jam, spec.params.alpha,
        )
        points = estimate_sop_grid(
            spec.lambda_e_grid, spec.n_hops, spec.power, params, spec.region,
            spec.rounds, _row_seed(spec.seed, row_index), spec.threads,
        )
        for lam_e, point in zip(spec.lambda_e_grid, points):
            est = point.estimate
            rows.append((
                fmt(lam_j), fmt(lam_e), fmt(spec.n_hops), fmt(spec.power), fmt(spec.rounds),
                fmt(est.outage_count), fmt(est.estimate), fmt(est.std_error),
                fmt(point.closed_form), fmt(est.estimate - point.closed_form),
            ))
    return header, rows


def run_tradeoff_curve(spec: ExperimentSpec):
    """Closed-form (COP, SOP) pairs along the transmission-power sweep."""
    if not spec.distances:
        raise ParameterError("tradeoff-curve needs a non-empty distance grid")
    header = ("distance", "power", "cop", "sop")
    rows = []
    for d in spec.distances:
        for p in POWER_SWEEP:
            if p == 0.0:
                cop, sop = 1.0, 0.0  # zero power: nothing decodes, nothing leaks
            else:
                path = PathSpec.uniform(spec.n_hops, d, p)
                cop = path_cop(path, spec.params).probability
                sop = path_sop(path, spec.params).probability
            rows.append((fmt(d), fmt(p), fmt(cop), fmt(sop)))
    return header, rows


def run_optimal_tradeoff(spec: ExperimentSpec):
    """Optimal value and per-hop powers versus the constraint level beta.

    Three panels: the shared optimal outage value and the secrecy-constrained
    power for two eavesdropper densities, and the QoS-constrained power for
    two jammer densities.  Uniform path: n_hops hops of equal length.
    """
    betas = spec.beta_grid or tuple(round(b, 3) for b in np.arange(0.05, 0.96, 0.05))
    d = spec.distances[0] if len(spec.distances) == 1 else 5.0
    path = PathSpec.uniform(spec.n_hops, d)
    header = ("panel", "beta", "lambda_e", "lambda_j", "value")
    base = spec.params
    rows = []
    for beta in betas:
        for lam_e in (1e-4, 1e-3):
            params = SystemParams(base.lambda_j, lam_e, base.gamma_c, base.gamma_e, base.p_jam, base.alpha)
            value = optimal_outage_value(path.total_length, params, beta)
            power = solve_so_cop(path, params, beta).powers[0]
            rows.append(("optimal_value", fmt(beta), fmt(lam_e), fmt(base.lambda_j), fmt(value)))
            rows.append(("power_so_cop", fmt(beta), fmt(lam_e), fmt(base.lambda_j), fmt(power)))
        for lam_j in (1e-4, 1e-3):
            params = SystemParams(lam_j, base.lambda_e, base.gamma_c, base.gamma_e, base.p_jam, base.alpha)
            power = solve_qo_sop(path, params, beta).powers[0]
            rows.append(("power_qo_sop", fmt(beta), fmt(base.lambda_e), fmt(lam_j), fmt(power)))
    return header, rows


def run_table_fixture(spec: ExperimentSpec):
    """Reproduce one of the published per-hop allocation tables."""
    if spec.fixture not in TABLE_FIXTURES:
        raise ParameterError(
            f"unknown fixture {spec.fixture!r}; choose one of {sorted(TABLE_FIXTURES)}"
        )
    distances, beta = TABLE_FIXTURES[spec.fixture]
    path = PathSpec.from_distances(distances)
    so = solve_so_cop(path, spec.params, beta)
    qo = solve_qo_sop(path, spec.params, beta)
    header = (
        "row_kind", "hop", "distance", "power_so_cop", "power_qo_sop",
        "optimal_cop", "optimal_sop",
    )
    rows = []
    for k, dist in enumerate(distances, start=1):
        rows.append((
            "hop", fmt(k), fmt(dist), fmt(so.powers[k - 1]), fmt(qo.powers[k - 1]), "", "",
        ))
    rows.append((
        "summary", "", fmt(path.total_length), "", "", fmt(so.achieved_cop), fmt(qo.achieved_sop),
    ))
    return header, rows


def run_route_demo(spec: ExperimentSpec, scenario: Optional[Scenario] = None):
    """Route one random 20-node scenario both ways; returns rows and the scenario.

    Returns ``(header, rows, scenario, reachable)``; an unreachable
    destination yields a single status row instead of hop rows.
    """
    if scenario is None:
        scenario = generate_scenario(spec.params, ROUTE_REGION, spec.n_legit, spec.seed)
    header = (
        "row_kind", "hop", "from_node", "to_node", "distance",
        "power_so_cop", "power_qo_sop", "optimal_cop", "optimal_sop",
    )
    try:
        so = route_so_cop(scenario, spec.max_range, spec.params, spec.beta_so)
        qo = route_qo_sop(scenario, spec.max_range, spec.params, spec.beta_co)
    except UnreachableError:
        return header, [("status", "", "", "", "unreachable", "", "", "", "")], scenario, False
    assert so.nodes == qo.nodes, "both objectives minimize total length"
    rows = []
    for k in range(len(so.hop_distances)):
        rows.append((
            "hop", fmt(k + 1), fmt(so.nodes[k]), fmt(so.nodes[k + 1]), fmt(so.hop_distances[k]),
            fmt(so.allocation.powers[k]), fmt(qo.allocation.powers[k]), "", "",
        ))
    rows.append((
        "summary", "", fmt(so.nodes[0]), fmt(so.nodes[-1]), fmt(so.total_length),
        "", "", fmt(so.achieved), fmt(qo.achieved),
    ))
    return header, rows, scenario, True
