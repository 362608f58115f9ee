"""One non-faulty agent: its state and the projected-consensus update.

An agent's estimate lives on its own cost's minimizer set at all times: it is
initialized by projecting a seed point there, and every update ends with the
same projection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ceopt import _kernels
from ceopt.costmodel import CostFunction


@dataclass(frozen=True)
class AgentState:
    """Immutable per-round snapshot of one non-faulty agent."""

    id: int
    estimate: np.ndarray
    cost: CostFunction


def initialize(cost: CostFunction, seed_point=None, agent_id: int = 0) -> AgentState:
    """Project a seed point (default: the origin) onto the cost's minimizer set."""
    if seed_point is None:
        seed_point = np.zeros(cost.dimension)
    seed_point = np.asarray(seed_point, dtype=np.float64)
    return AgentState(id=agent_id, estimate=cost.project_to_min_set(seed_point), cost=cost)


def consensus_update(state: AgentState, kept_messages, eta: float) -> AgentState:
    """Move against the summed disagreement with the kept messages, then project.

        x' = proj( x - eta * sum_j (x - m_j) )

    kept_messages must be the filter's kept list (its order fixes the order of
    the floating-point sum).
    """
    if eta < 0:
        raise ValueError(f"step size must be nonnegative, got {eta}")
    d = state.cost.dimension
    kept = np.empty((len(kept_messages), d))
    for k, msg in enumerate(kept_messages):
        v = np.asarray(msg, dtype=np.float64)
        if v.shape != (d,):
            raise ValueError(f"kept message {k} has shape {v.shape}, expected ({d},)")
        kept[k] = v
    z = _kernels.drift_step(np.ascontiguousarray(state.estimate), kept, eta)
    return AgentState(id=state.id, estimate=state.cost.project_to_min_set(z), cost=state.cost)
