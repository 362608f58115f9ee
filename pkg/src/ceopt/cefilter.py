"""Comparative elimination: drop the f received estimates farthest from one's own.

Distances are Euclidean (compared as squared norms, which orders identically);
ties are broken by ascending sender id so the filter is a deterministic pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ceopt import _kernels
from ceopt.errors import ProtocolError


@dataclass
class FilterResult:
    """Partition of an inbox into the n-f-1 kept and f eliminated estimates.

    Both lists hold (sender_id, vector) pairs ordered by ascending
    (distance, sender id); every kept distance is <= every eliminated one.
    """

    kept: list[tuple[int, np.ndarray]]
    eliminated: list[tuple[int, np.ndarray]]


def apply_ce_filter(own_estimate, received, f: int) -> FilterResult:
    """Keep the n-f-1 received estimates closest to own_estimate.

    received maps sender id -> vector and must hold one entry per other agent
    (n-1 total); f is the fault budget.
    """
    own = np.ascontiguousarray(own_estimate, dtype=np.float64)
    if own.ndim != 1:
        raise ValueError(f"own_estimate must be a vector, got shape {own.shape}")
    d = own.shape[0]
    if f < 0 or f > len(received):
        raise ProtocolError(
            f"fault budget f={f} incompatible with {len(received)} received estimates"
        )
    senders = sorted(received)
    msgs = np.empty((len(senders), d))
    for k, j in enumerate(senders):
        v = np.asarray(received[j], dtype=np.float64)
        if v.shape != (d,):
            raise ValueError(f"message from {j} has shape {v.shape}, expected ({d},)")
        msgs[k] = v
    dists = _kernels.sq_dists(own, msgs)
    order = sorted(range(len(senders)), key=lambda k: (dists[k], senders[k]))
    keep = len(senders) - f
    kept = [(senders[k], msgs[k].copy()) for k in order[:keep]]
    eliminated = [(senders[k], msgs[k].copy()) for k in order[keep:]]
    return FilterResult(kept=kept, eliminated=eliminated)
