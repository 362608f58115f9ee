"""Byzantine message generation.

Faulty agents are unconstrained: they may equivocate (send different vectors
to different receivers), stay silent (receivers substitute the zero vector),
or adapt to the honest broadcasts they observe in the current round. Every
strategy draws from an RNG stream keyed by (scenario seed, sender, round), so
its output is independent of agent processing order.
"""

from __future__ import annotations

import abc

import numpy as np


def message_rng(scenario_seed: int, sender: int, round_idx: int) -> np.random.Generator:
    """Deterministic per-(sender, round) stream derived from the scenario seed."""
    return np.random.default_rng((scenario_seed, sender, round_idx))


class ByzantineStrategy(abc.ABC):
    """Policy producing one faulty agent's outgoing messages for a round."""

    name: str

    @abc.abstractmethod
    def generate(self, round_idx, sender, receivers, observed, rng):
        """Map receiver id -> vector, or None for "no message sent".

        observed holds the current round's honest broadcasts (id -> vector);
        receivers is the list of honest ids to address.
        """

    @abc.abstractmethod
    def params(self) -> dict:
        """JSON-serializable parameters (inverse of from_config)."""


class RandomUniform(ByzantineStrategy):
    """Fresh independent uniform [low, high]^d vector per receiver per round."""

    name = "random_uniform"

    def __init__(self, low: float = 0.0, high: float = 10.0):
        if not (np.isfinite(low) and np.isfinite(high) and low <= high):
            raise ValueError(f"need finite low <= high, got [{low}, {high}]")
        self.low = float(low)
        self.high = float(high)

    def generate(self, round_idx, sender, receivers, observed, rng):
        d = _dimension(observed)
        return {r: rng.uniform(self.low, self.high, size=d) for r in sorted(receivers)}

    def params(self):
        return {"low": self.low, "high": self.high}


class FixedVector(ByzantineStrategy):
    """The same constant vector to every receiver, every round."""

    name = "fixed_vector"

    def __init__(self, vector):
        v = np.asarray(vector, dtype=np.float64)
        if v.ndim != 1 or not np.all(np.isfinite(v)):
            raise ValueError("vector must be a finite 1-D array")
        self.vector = v

    def generate(self, round_idx, sender, receivers, observed, rng):
        return {r: self.vector.copy() for r in receivers}

    def params(self):
        return {"vector": self.vector.tolist()}


class Silent(ByzantineStrategy):
    """Never sends; receivers substitute the zero vector."""

    name = "silent"

    def generate(self, round_idx, sender, receivers, observed, rng):
        return {r: None for r in receivers}

    def params(self):
        return {}


class MirrorAttack(ByzantineStrategy):
    """Adaptive equivocation: each receiver gets -scale times its own broadcast.

    Not part of the base protocol suite; a colluding stress strategy that
    tailors every message to its target.
    """

    name = "mirror"

    def __init__(self, scale: float = 1.0):
        if not np.isfinite(scale):
            raise ValueError(f"scale must be finite, got {scale}")
        self.scale = float(scale)

    def generate(self, round_idx, sender, receivers, observed, rng):
        return {r: -self.scale * np.asarray(observed[r], dtype=np.float64) for r in receivers}

    def params(self):
        return {"scale": self.scale}


def _dimension(observed) -> int:
    if not observed:
        raise ValueError("cannot infer message dimension from empty observations")
    return len(next(iter(observed.values())))


STRATEGIES = {cls.name: cls for cls in (RandomUniform, FixedVector, Silent, MirrorAttack)}


def strategy_from_config(name: str, params: dict | None = None) -> ByzantineStrategy:
    if name not in STRATEGIES:
        raise ValueError(f"unknown strategy {name!r}; known: {sorted(STRATEGIES)}")
    return STRATEGIES[name](**(params or {}))


def generate_messages(strategy, round_idx, sender, receivers, observed, rng_stream):
    """Run a strategy for one round; absent entries (None) mean "nothing sent"."""
    if not receivers:
        raise ValueError("receivers must be nonempty")
    out = strategy.generate(round_idx, sender, receivers, observed, rng_stream)
    return {r: out.get(r) for r in receivers}
