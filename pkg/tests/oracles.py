"""Independent reference computations the tests check the package against.

Everything here deliberately takes a different route from the package code:
matrix/vectorized numpy instead of the kernels' scalar loops, KKT systems and
scipy solvers instead of the closed-form projection, plain gradient descent
instead of normal equations. Comparisons are made at stated tolerances, never
by construction.
"""

import numpy as np

from ceopt.adversary import generate_messages, message_rng


def kkt_project(a_matrix, b_vector, x):
    """Solve min ||x - y||^2 s.t. A y = b through its KKT optimality system."""
    a = np.atleast_2d(np.asarray(a_matrix, dtype=float))
    b = np.atleast_1d(np.asarray(b_vector, dtype=float))
    m, d = a.shape
    kkt = np.block([[2.0 * np.eye(d), a.T], [a, np.zeros((m, m))]])
    rhs = np.concatenate([2.0 * np.asarray(x, dtype=float), b])
    sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return sol[:d]


def scipy_project(a_matrix, b_vector, x):
    """Same QP through an iterative constrained minimizer (slsqp)."""
    from scipy.optimize import minimize

    a = np.atleast_2d(np.asarray(a_matrix, dtype=float))
    b = np.atleast_1d(np.asarray(b_vector, dtype=float))
    x = np.asarray(x, dtype=float)
    res = minimize(
        lambda y: np.sum((x - y) ** 2),
        x0=np.zeros(len(x)),
        jac=lambda y: 2.0 * (y - x),
        constraints={"type": "eq", "fun": lambda y: a @ y - b, "jac": lambda y: a},
        method="SLSQP",
        tol=1e-12,
        options={"maxiter": 200},
    )
    assert res.success, res.message
    return res.x


def fd_gradient(func, x, h=1e-6):
    """Central finite differences of a scalar function."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for k in range(len(x)):
        e = np.zeros_like(x)
        e[k] = h
        g[k] = (func(x + e) - func(x - e)) / (2.0 * h)
    return g


def gd_minimize(a_matrices, b_vectors, iters=50_000, tol=1e-13):
    """Gradient descent with exact line search on sum ||A_i x - b_i||^2."""
    mats = [np.atleast_2d(a) for a in a_matrices]
    vecs = [np.atleast_1d(b) for b in b_vectors]
    d = mats[0].shape[1]
    hess = sum(2.0 * a.T @ a for a in mats)
    lin = sum(2.0 * a.T @ b for a, b in zip(mats, vecs))
    x = np.zeros(d)
    for _ in range(iters):
        g = hess @ x - lin
        gnorm2 = float(g @ g)
        if gnorm2 < tol**2:
            break
        x = x - (gnorm2 / float(g @ (hess @ g))) * g
    return x


def brute_filter(own, received, f):
    """Reference CE filter: np.linalg.norm distances, explicit pair sort."""
    own = np.asarray(own, dtype=float)
    ranked = sorted(
        ((float(np.linalg.norm(own - np.asarray(v, dtype=float))), j) for j, v in received.items()),
    )
    keep = len(ranked) - f
    return [j for _, j in ranked[:keep]], [j for _, j in ranked[keep:]]


def min_norm_subset_solution(costs, subset):
    """Min-norm least-squares minimizer of a subset's stacked system."""
    a = np.vstack([costs[i].a_matrix for i in subset])
    b = np.concatenate([costs[i].b_vector for i in subset])
    return np.linalg.lstsq(a, b, rcond=None)[0]


def simulate_reference(scenario, rounds):
    """Vectorized re-implementation of the protocol for a few rounds.

    Uses matrix expressions (norms, A @ x, closed-form projector applied via
    matmul) rather than the package kernels; shares only the adversary RNG
    keying, which is part of the message contract.
    """
    honest = scenario.honest_ids
    projs = {}
    for i in honest:
        a = scenario.costs[i].a_matrix
        b = scenario.costs[i].b_vector
        pinv = a.T @ np.linalg.inv(a @ a.T)
        projs[i] = (np.eye(a.shape[1]) - pinv @ a, pinv @ b)

    def project(i, x):
        p, q = projs[i]
        return p @ x + q

    est = {}
    for i in honest:
        seed = scenario.seed_points.get(i, np.zeros(scenario.dimension))
        est[i] = project(i, np.asarray(seed, dtype=float))
    history = [dict(est)]
    for t in range(rounds):
        adv = {}
        for s in sorted(scenario.faulty_ids):
            raw = generate_messages(
                scenario.strategies[s], t, s, honest, est, message_rng(scenario.seed, s, t)
            )
            adv[s] = {
                r: (np.zeros(scenario.dimension) if v is None else np.asarray(v, dtype=float))
                for r, v in raw.items()
            }
        new = {}
        for i in honest:
            inbox = {j: est[j] for j in honest if j != i}
            for s in adv:
                inbox[s] = adv[s][i]
            if scenario.filter_enabled:
                ranked = sorted(inbox, key=lambda j: (float(np.linalg.norm(est[i] - inbox[j])), j))
                kept = ranked[: scenario.n - scenario.f - 1]
            else:
                kept = sorted(inbox)
            drift = sum((est[i] - inbox[j] for j in kept), start=np.zeros(scenario.dimension))
            new[i] = project(i, est[i] - scenario.eta * drift)
        est = new
        history.append(dict(est))
    return history
