"""Pure-Python round kernel, used when the compiled extension is unavailable.

Every loop here mirrors the C code in _native.pyx operation for operation
(same accumulation order, no BLAS, no pairwise summation), so the two
backends produce bitwise-identical traces. Keep them in sync.
"""

import numpy as np

NAME = "python"


def sq_dists(own, msgs, out=None):
    """Squared Euclidean distance from `own` (d,) to each row of `msgs` (m, d)."""
    m, d = msgs.shape
    if out is None:
        out = np.empty(m)
    for k in range(m):
        s = 0.0
        for c in range(d):
            diff = own[c] - msgs[k, c]
            s += diff * diff
        out[k] = s
    return out


def affine_project(x, proj_mat, proj_off, out=None):
    """y = proj_mat @ x + proj_off with row-sequential accumulation."""
    d = x.shape[0]
    if out is None:
        out = np.empty(d)
    for r in range(d):
        s = 0.0
        for c in range(d):
            s += proj_mat[r, c] * x[c]
        out[r] = s + proj_off[r]
    return out


def drift_step(estimate, kept, eta, out=None):
    """z = estimate - eta * sum_j (estimate - kept[j]).

    The sum runs over kept rows in their given order; callers pass the
    filter's kept list so the order is deterministic.
    """
    k, d = kept.shape
    if out is None:
        out = np.empty(d)
    for c in range(d):
        acc = 0.0
        for j in range(k):
            acc += estimate[c] - kept[j, c]
        out[c] = estimate[c] - eta * acc
    return out


def filter_order(dists, sender_ids):
    """Indices sorted by (distance, sender id) ascending."""
    m = len(dists)
    return sorted(range(m), key=lambda t: (dists[t], sender_ids[t]))


def round_step(estimates, inbox, sender_ids, f, eta, filter_enabled,
               proj_mats, proj_offs, out=None):
    """Fused filter+update for every honest agent against a pre-round snapshot.

    estimates  : (h, d) current honest estimates
    inbox      : (h, m, d) received messages, slots in ascending sender id
    sender_ids : (h, m) sender id per slot
    f          : fault budget; keep m - f closest when filtering
    """
    h, m, d = inbox.shape
    if out is None:
        out = np.empty((h, d))
    keep = m - f if filter_enabled else m
    dists = np.empty(m)
    for i in range(h):
        if filter_enabled:
            sq_dists(estimates[i], inbox[i], out=dists)
            order = filter_order(dists, sender_ids[i])[:keep]
        else:
            order = range(m)
        z = np.empty(d)
        for c in range(d):
            acc = 0.0
            for j in order:
                acc += estimates[i, c] - inbox[i, j, c]
            z[c] = estimates[i, c] - eta * acc
        affine_project(z, proj_mats[i], proj_offs[i], out=out[i])
    return out


def sum_sq_error(estimates, x_star):
    """Sum over agents (row order) of the squared distance to x_star."""
    h, d = estimates.shape
    total = 0.0
    for i in range(h):
        for c in range(d):
            diff = estimates[i, c] - x_star[c]
            total += diff * diff
    return total
