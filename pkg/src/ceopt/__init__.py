"""Byzantine fault-tolerant decentralized convex optimization.

A deterministic simulator and analysis toolkit for projected consensus with
comparative-elimination filtering on a complete peer-to-peer network: agents
iteratively average the estimates of their closest peers and project onto
their own cost's minimizer set, discarding the f farthest-off messages each
round to survive up to f Byzantine agents.
"""

from ceopt._kernels import BACKEND
from ceopt.adversary import (
    ByzantineStrategy,
    FixedVector,
    MirrorAttack,
    RandomUniform,
    Silent,
    strategy_from_config,
)
from ceopt.agent import AgentState, consensus_update, initialize
from ceopt.analysis import (
    TheoryReport,
    check_2f_redundancy,
    contraction_constants,
    contraction_factor,
    fault_tolerance_margin,
    theory_report,
)
from ceopt.cefilter import FilterResult, apply_ce_filter
from ceopt.costmodel import (
    CostFunction,
    QuadraticCost,
    lipschitz_constant,
    strong_convexity_constant,
)
from ceopt.netsim import (
    RoundTrace,
    Scenario,
    compute_error,
    run_round,
    run_simulation,
    solve_honest_optimum,
)
from ceopt.scenariofile import load_scenario, parse_scenario, save_scenario, serialize_scenario

__version__ = "0.1.0"


def bundled_scenario_path(name: str):
    """Path to a scenario shipped with the package (e.g. 'paper_fig2')."""
    from importlib.resources import files

    return files("ceopt.scenarios").joinpath(f"{name}.json")
