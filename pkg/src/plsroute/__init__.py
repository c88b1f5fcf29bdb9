"""Physical-layer-security outage analytics, simulation, power allocation
and routing for multi-hop ad hoc networks with PPP jammers and eavesdroppers."""

from .allocation import (
    PowerAllocation,
    VerificationReport,
    optimal_outage_value,
    solve_qo_sop,
    solve_so_cop,
    verify_optimality,
)
from .geometry import (
    PointSet,
    Region,
    Scenario,
    generate_scenario,
    load_scenario,
    sample_ppp,
    sample_rayleigh_power,
    save_scenario,
)
from .montecarlo import (
    SimConfig,
    SimEstimate,
    estimate_cop_grid,
    estimate_path_cop,
    estimate_path_sop,
    estimate_sop_grid,
    simulate_link_sir,
)
from .outage import (
    OutageValue,
    a_co,
    b_so,
    gamma_factor,
    link_cop,
    link_sop,
    path_cop,
    path_sop,
)
from .params import (
    Hop,
    OutageConstraint,
    ParameterError,
    PathSpec,
    SystemParams,
    rates_to_thresholds,
    validate_params,
)
from .routing import (
    LinkGraph,
    RouteResult,
    UnreachableError,
    build_graph,
    default_endpoints,
    route_qo_sop,
    route_so_cop,
    shortest_path,
)

__version__ = "0.1.0"
