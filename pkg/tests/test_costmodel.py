import numpy as np
import pytest

from conftest import lines_through, random_full_rank
from oracles import fd_gradient, kkt_project

from ceopt import QuadraticCost, lipschitz_constant, strong_convexity_constant
from ceopt.errors import SingularProjectionError


class TestEvaluate:
    def test_paper_agent1_at_common_minimizer(self, paper_costs):
        assert paper_costs[1].evaluate([1.0, 1.0]) == 0.0

    def test_projected_point_attains_min_value(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a, b = random_full_rank(rng)
            cost = QuadraticCost(a, b)
            y = cost.project_to_min_set(rng.standard_normal(cost.dimension))
            assert cost.evaluate(y) == pytest.approx(cost.min_value, abs=1e-18)

    def test_line_cost_off_set(self):
        cost = QuadraticCost([[1.0, 0.0]], [1.0])
        # (2*1 + 3*0 - 1)^2 = 1
        assert cost.evaluate([2.0, 3.0]) == 1.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            QuadraticCost([[1.0, 0.0]], [1.0]).evaluate([1.0, 2.0, 3.0])


class TestGradient:
    def test_vanishes_on_min_set(self, paper_costs):
        for cost in paper_costs.values():
            y = cost.project_to_min_set([5.0, -3.0])
            assert np.linalg.norm(cost.gradient(y)) < 1e-12

    def test_hand_expansion(self):
        cost = QuadraticCost([[1.0, 0.0]], [1.0])
        assert np.array_equal(cost.gradient([2.0, 3.0]), [2.0, 0.0])

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a, b = random_full_rank(rng)
            cost = QuadraticCost(a, b)
            x = rng.standard_normal(cost.dimension)
            g = cost.gradient(x)
            fd = fd_gradient(cost.evaluate, x)
            assert np.allclose(g, fd, rtol=1e-6, atol=1e-6)


class TestProjection:
    def test_point_on_set_unchanged(self):
        cost = QuadraticCost([[1.0, 0.0]], [1.0])
        assert np.array_equal(cost.project_to_min_set([1.0, 7.0]), [1.0, 7.0])

    def test_origin_onto_axis_line(self):
        cost = QuadraticCost([[1.0, 0.0]], [1.0])
        assert np.array_equal(cost.project_to_min_set([0.0, 0.0]), [1.0, 0.0])

    def test_origin_onto_tilted_line(self):
        cost = QuadraticCost([[0.8, 0.5]], [1.3])
        got = cost.project_to_min_set([0.0, 0.0])
        scale = 1.3 / 0.89
        assert np.allclose(got, [0.8 * scale, 0.5 * scale], rtol=0, atol=1e-12)
        assert np.allclose(got, [1.16854, 0.73034], atol=5e-6)
        assert np.allclose(got, kkt_project([[0.8, 0.5]], [1.3], [0.0, 0.0]), atol=1e-10)

    def test_idempotent(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            a, b = random_full_rank(rng)
            cost = QuadraticCost(a, b)
            y = cost.project_to_min_set(rng.standard_normal(cost.dimension))
            assert np.allclose(cost.project_to_min_set(y), y, rtol=0, atol=1e-10)

    def test_non_expansion(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            a, b = random_full_rank(rng)
            cost = QuadraticCost(a, b)
            d = cost.dimension
            x = 3.0 * rng.standard_normal(d)
            # random point of the minimizer set: particular solution + null direction
            y = kkt_project(a, b, rng.standard_normal(d))
            assert np.linalg.norm(cost.project_to_min_set(x) - y) <= np.linalg.norm(x - y)

    def test_result_satisfies_constraint(self):
        rng = np.random.default_rng(19)
        for _ in range(50):
            a, b = random_full_rank(rng)
            cost = QuadraticCost(a, b)
            y = cost.project_to_min_set(rng.standard_normal(cost.dimension))
            assert np.linalg.norm(cost.a_matrix @ y - cost.b_vector) < 1e-10

    def test_rank_deficient_rejected(self):
        with pytest.raises(SingularProjectionError):
            QuadraticCost([[1.0, 0.0], [2.0, 0.0]], [1.0, 2.0])
        with pytest.raises(SingularProjectionError):
            QuadraticCost([[0.0, 0.0]], [0.0])


class TestCurvatureConstants:
    def test_identity_cost(self):
        cost = QuadraticCost(np.eye(3), [1.0, 2.0, 3.0])
        assert lipschitz_constant([cost]) == pytest.approx(2.0, abs=1e-12)
        assert strong_convexity_constant([cost]) == pytest.approx(2.0, abs=1e-12)

    def test_paper_instance(self, paper_costs):
        costs = list(paper_costs.values())
        assert lipschitz_constant(costs) == pytest.approx(2.18, abs=1e-12)
        # eigen-decomposition oracle on the hand-assembled average Hessian
        avg = 2.0 / 5.0 * np.array([[2.98, 1.40], [1.40, 1.98]])
        expected = np.linalg.eigvalsh(avg)[0]
        lam = strong_convexity_constant(costs)
        assert lam == pytest.approx(expected, abs=1e-12)
        assert lam == pytest.approx(0.3974, abs=1e-4)

    def test_duplicate_invariance(self, paper_costs):
        one = [paper_costs[2]]
        assert lipschitz_constant(one * 2) == lipschitz_constant(one)

    def test_degenerate_direction_gives_zero(self):
        costs = [QuadraticCost([[1.0, 0.0]], [1.0]) for _ in range(5)]
        assert strong_convexity_constant(costs) == 0.0

    def test_lambda_below_mu_on_redundant_instances(self, paper_costs):
        instances = [list(paper_costs.values())]
        rng = np.random.default_rng(23)
        for _ in range(10):
            k = int(rng.integers(3, 7))
            dirs = [rng.standard_normal(2) for _ in range(k)]
            instances.append(list(lines_through(rng.standard_normal(2), dirs).values()))
        for costs in instances:
            assert strong_convexity_constant(costs) <= lipschitz_constant(costs) + 1e-12

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            lipschitz_constant([])
        with pytest.raises(ValueError):
            strong_convexity_constant([])
