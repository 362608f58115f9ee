import numpy as np
import pytest

from ceopt import QuadraticCost, bundled_scenario_path, load_scenario

# rows/offsets of the bundled six-agent experiment (agent 6 is the faulty one)
PAPER_ROWS = {
    1: ([[1.0, 0.0]], [1.0]),
    2: ([[0.8, 0.5]], [1.3]),
    3: ([[0.5, 0.8]], [1.3]),
    4: ([[0.3, 1.0]], [1.3]),
    5: ([[1.0, 0.3]], [1.3]),
}


@pytest.fixture(scope="session")
def paper_costs():
    return {i: QuadraticCost(a, b) for i, (a, b) in PAPER_ROWS.items()}

@pytest.fixture()
def paper_scenario():
    return load_scenario(bundled_scenario_path("paper_fig2"))


def random_full_rank(rng, d_max=5, scale=1.0):
    """Random full-row-rank (A, b) with 1 <= rows <= d <= d_max."""
    d = int(rng.integers(1, d_max + 1))
    rows = int(rng.integers(1, d + 1))
    while True:
        a = scale * rng.standard_normal((rows, d))
        sv = np.linalg.svd(a, compute_uv=False)
        if sv[-1] > 1e-3 * sv[0] and sv[-1] > 1e-6:
            break
    b = scale * rng.standard_normal(rows)
    return a, b


def lines_through(point, directions, rng=None):
    """Quadratic line costs {a.x = a.point} through a common point."""
    costs = {}
    for k, a in enumerate(directions, start=1):
        a = np.asarray(a, dtype=float).reshape(1, -1)
        costs[k] = QuadraticCost(a, a @ np.asarray(point, dtype=float))
    return costs
