"""Synchronous round orchestration over a complete network.

Each round runs three steps against an immutable pre-round snapshot:
every honest agent broadcasts its estimate (faulty agents send whatever their
strategy produces, absent messages become the zero vector); every honest agent
keeps the n-f-1 received estimates closest to its own (comparative
elimination), unless filtering is disabled; every honest agent then applies
the projected-consensus update.

run_simulation drives the rounds through the selected kernel backend and
records a trace of estimates plus the aggregate squared error against the
honest optimum. With workers > 1 the per-agent filter/update work is
dispatched over a thread pool through the modular cefilter/agent path instead;
both paths are bitwise identical (tested), so the trace does not depend on
execution order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ceopt import _kernels
from ceopt.adversary import ByzantineStrategy, generate_messages, message_rng
from ceopt.agent import AgentState, consensus_update, initialize
from ceopt.cefilter import apply_ce_filter
from ceopt.costmodel import QuadraticCost
from ceopt.errors import ConfigurationError, NonUniqueOptimumError, ProtocolError


@dataclass
class Scenario:
    """Complete description of one experiment."""

    n: int
    f: int
    faulty_ids: frozenset[int]
    costs: dict[int, QuadraticCost]
    strategies: dict[int, ByzantineStrategy]
    eta: float
    max_rounds: int
    seed: int
    tolerance: float = 0.0
    filter_enabled: bool = True
    seed_points: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.faulty_ids = frozenset(self.faulty_ids)
        if isinstance(self.strategies, ByzantineStrategy):
            self.strategies = {i: self.strategies for i in self.faulty_ids}

    @property
    def honest_ids(self) -> list[int]:
        return sorted(set(range(1, self.n + 1)) - self.faulty_ids)

    @property
    def dimension(self) -> int:
        return next(iter(self.costs.values())).dimension

    def validate(self) -> None:
        if not (self.n > self.f >= 0):
            raise ConfigurationError(f"need n > f >= 0, got n={self.n}, f={self.f}")
        if len(self.faulty_ids) > self.f:
            raise ConfigurationError(
                f"{len(self.faulty_ids)} faulty agents exceed the budget f={self.f}"
            )
        if not self.faulty_ids <= set(range(1, self.n + 1)):
            raise ConfigurationError(f"faulty ids {sorted(self.faulty_ids)} outside 1..{self.n}")
        honest = set(range(1, self.n + 1)) - self.faulty_ids
        if set(self.costs) != honest:
            raise ConfigurationError(
                f"costs must be keyed by the honest ids {sorted(honest)}, got {sorted(self.costs)}"
            )
        if set(self.strategies) != self.faulty_ids:
            raise ConfigurationError(
                f"strategies must be keyed by the faulty ids {sorted(self.faulty_ids)}, "
                f"got {sorted(self.strategies)}"
            )
        d = self.dimension
        for i, cost in self.costs.items():
            if cost.dimension != d:
                raise ConfigurationError(f"cost of agent {i} has dimension {cost.dimension} != {d}")
        for i, p in self.seed_points.items():
            if i not in honest:
                raise ConfigurationError(f"seed point for non-honest agent {i}")
            if np.asarray(p).shape != (d,):
                raise ConfigurationError(f"seed point for agent {i} is not a vector of length {d}")
        if self.eta < 0:
            raise ConfigurationError(f"eta must be nonnegative, got {self.eta}")
        if self.max_rounds < 0:
            raise ConfigurationError(f"max_rounds must be nonnegative, got {self.max_rounds}")
        if self.tolerance < 0:
            raise ConfigurationError(f"tolerance must be nonnegative, got {self.tolerance}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must fit in unsigned 64 bits, got {self.seed}")


@dataclass
class RoundTrace:
    """Snapshot of one round: honest estimates and the error functional."""

    round: int
    estimates: dict[int, np.ndarray]
    v_t: float | None


def compute_error(estimates: dict[int, np.ndarray], x_star) -> float:
    """Aggregate squared error sum_i ||x_i - x_star||^2 (ids in ascending order)."""
    x_star = np.ascontiguousarray(x_star, dtype=np.float64)
    stacked = np.ascontiguousarray(
        np.stack([np.asarray(estimates[i], dtype=np.float64) for i in sorted(estimates)])
    )
    if stacked.shape[1] != x_star.shape[0]:
        raise ValueError("dimension mismatch between estimates and x_star")
    return _kernels.sum_sq_error(stacked, x_star)


def solve_honest_optimum(costs: dict[int, QuadraticCost]) -> np.ndarray:
    """Minimizer of the stacked honest least-squares system via normal equations."""
    if not costs:
        raise ValueError("need at least one cost")
    d = next(iter(costs.values())).dimension
    normal = np.zeros((d, d))
    rhs = np.zeros(d)
    for cost in costs.values():
        normal += cost.a_matrix.T @ cost.a_matrix
        rhs += cost.a_matrix.T @ cost.b_vector
    eigs = np.linalg.eigvalsh(normal)
    if eigs[-1] <= 0.0 or eigs[0] < 1e-12 * eigs[-1]:
        raise NonUniqueOptimumError(
            f"honest normal matrix is singular (eigenvalues [{eigs[0]:.3e}, {eigs[-1]:.3e}])"
        )
    return np.linalg.solve(normal, rhs)


def _faulty_messages(scenario: Scenario, broadcasts: dict[int, np.ndarray], round_idx: int):
    """Faulty half of the broadcast: sender -> receiver -> vector (zero-filled)."""
    d = scenario.dimension
    zero = np.zeros(d)
    receivers = scenario.honest_ids
    out = {}
    for s in sorted(scenario.faulty_ids):
        rng = message_rng(scenario.seed, s, round_idx)
        raw = generate_messages(scenario.strategies[s], round_idx, s, receivers, broadcasts, rng)
        msgs = {}
        for r in receivers:
            v = raw.get(r)
            if v is None:
                msgs[r] = zero
            else:
                v = np.asarray(v, dtype=np.float64)
                if v.shape != (d,):
                    raise ProtocolError(
                        f"strategy of agent {s} produced shape {v.shape} for receiver {r},"
                        f" expected ({d},)"
                    )
                msgs[r] = v
        out[s] = msgs
    return out


def build_inboxes(states: dict[int, AgentState], scenario: Scenario, round_idx: int):
    """Broadcast step: every honest agent's inbox, keyed receiver -> sender -> vector."""
    broadcasts = {i: st.estimate for i, st in states.items()}
    faulty = _faulty_messages(scenario, broadcasts, round_idx)
    inboxes = {}
    for i in scenario.honest_ids:
        inbox = {j: broadcasts[j] for j in scenario.honest_ids if j != i}
        for s in faulty:
            inbox[s] = faulty[s][i]
        if len(inbox) != scenario.n - 1:
            raise ProtocolError(
                f"agent {i} inbox has {len(inbox)} entries, expected {scenario.n - 1}"
            )
        inboxes[i] = inbox
    return inboxes


def _agent_round(state: AgentState, inbox, scenario: Scenario) -> AgentState:
    """Filter and update for one agent (modular path)."""
    if scenario.filter_enabled:
        kept = [v for _, v in apply_ce_filter(state.estimate, inbox, scenario.f).kept]
    else:
        kept = [inbox[j] for j in sorted(inbox)]
    return consensus_update(state, kept, scenario.eta)


def run_round(
    states: dict[int, AgentState],
    scenario: Scenario,
    round_idx: int,
    executor: ThreadPoolExecutor | None = None,
) -> dict[int, AgentState]:
    """One synchronous round; every agent reads only the pre-round snapshot."""
    if set(states) != set(scenario.honest_ids):
        raise ProtocolError("states must be keyed exactly by the honest ids")
    inboxes = build_inboxes(states, scenario, round_idx)
    ids = scenario.honest_ids
    step = lambda i: _agent_round(states[i], inboxes[i], scenario)
    if executor is None:
        new_states = [step(i) for i in ids]
    else:
        new_states = list(executor.map(step, ids))
    return {i: st for i, st in zip(ids, new_states)}


def initial_states(scenario: Scenario) -> dict[int, AgentState]:
    return {
        i: initialize(scenario.costs[i], scenario.seed_points.get(i), agent_id=i)
        for i in scenario.honest_ids
    }


class _KernelLoop:
    """Vectorized state for the fused-kernel fast path."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        ids = scenario.honest_ids
        n, d, h = scenario.n, scenario.dimension, len(ids)
        self.ids = ids
        senders = np.array([[j for j in range(1, n + 1) if j != i] for i in ids], dtype=np.int64)
        self.sender_ids = np.ascontiguousarray(senders)
        # gather indices for the honest block of the inbox tensor
        row_of = {i: k for k, i in enumerate(ids)}
        recv, slot, src = [], [], []
        self.faulty_slots = {s: np.empty(h, dtype=np.intp) for s in sorted(scenario.faulty_ids)}
        for k, i in enumerate(ids):
            for pos, j in enumerate(senders[k]):
                if j in row_of:
                    recv.append(k)
                    slot.append(pos)
                    src.append(row_of[j])
                else:
                    self.faulty_slots[j][k] = pos
        self.h_recv = np.array(recv, dtype=np.intp)
        self.h_slot = np.array(slot, dtype=np.intp)
        self.h_src = np.array(src, dtype=np.intp)
        self.proj_mats = np.ascontiguousarray(
            np.stack([scenario.costs[i].proj_mat for i in ids])
        )
        self.proj_offs = np.ascontiguousarray(
            np.stack([scenario.costs[i].proj_off for i in ids])
        )
        self.inbox = np.zeros((h, n - 1, d))
        self.rows = np.arange(h)

    def step(self, estimates: np.ndarray, round_idx: int) -> np.ndarray:
        scenario = self.scenario
        broadcasts = {i: estimates[k] for k, i in enumerate(self.ids)}
        faulty = _faulty_messages(scenario, broadcasts, round_idx)
        self.inbox[self.h_recv, self.h_slot] = estimates[self.h_src]
        for s, msgs in faulty.items():
            block = np.stack([msgs[i] for i in self.ids])
            self.inbox[self.rows, self.faulty_slots[s]] = block
        return _kernels.round_step(
            estimates,
            self.inbox,
            self.sender_ids,
            scenario.f,
            scenario.eta,
            scenario.filter_enabled,
            self.proj_mats,
            self.proj_offs,
        )


def run_simulation(scenario: Scenario, workers: int = 1) -> list[RoundTrace]:
    """Run until max_rounds, or earlier if tolerance > 0 and v_t reaches it.

    Returns the full trace including round 0. workers > 1 exercises the
    round-barrier contract by fanning per-agent work over a thread pool; the
    trace is bitwise independent of the execution order.
    """
    scenario.validate()
    try:
        x_star = solve_honest_optimum(scenario.costs)
        x_star = np.ascontiguousarray(x_star)
    except NonUniqueOptimumError:
        x_star = None

    def v_of(matrix) -> float | None:
        return _kernels.sum_sq_error(matrix, x_star) if x_star is not None else None

    states = initial_states(scenario)
    ids = scenario.honest_ids
    estimates = np.ascontiguousarray(np.stack([states[i].estimate for i in ids]))
    trace = [RoundTrace(0, {i: estimates[k].copy() for k, i in enumerate(ids)}, v_of(estimates))]

    def should_stop(v) -> bool:
        return v is not None and scenario.tolerance > 0 and v <= scenario.tolerance

    if workers == 1:
        loop = _KernelLoop(scenario)
        for t in range(scenario.max_rounds):
            if should_stop(trace[-1].v_t):
                break
            estimates = loop.step(estimates, t)
            trace.append(
                RoundTrace(t + 1, {i: estimates[k].copy() for k, i in enumerate(ids)}, v_of(estimates))
            )
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for t in range(scenario.max_rounds):
                if should_stop(trace[-1].v_t):
                    break
                states = run_round(states, scenario, t, executor=pool)
                estimates = np.ascontiguousarray(np.stack([states[i].estimate for i in ids]))
                trace.append(
                    RoundTrace(t + 1, {i: states[i].estimate.copy() for i in ids}, v_of(estimates))
                )
    return trace
